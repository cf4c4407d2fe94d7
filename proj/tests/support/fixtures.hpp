#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "lumaswitch/colorspace.hpp"
#include "lumaswitch/imaging.hpp"
#include "lumaswitch/mlp.hpp"
#include "lumaswitch/skinfilter.hpp"

namespace lumaswitch::fixtures {

/// Passes all three default filters.
inline constexpr Rgb kSkinTone{180, 120, 100};
/// Passes only the HSV filter under the swapped V reading [0.112, 0.38].
inline constexpr Rgb kDimSkin{80, 68, 60};
/// Passes only the RGB filter under either V reading.
inline constexpr Rgb kPaleGray{200, 200, 200};

inline void fill_rect(ImageBuffer& img, std::size_t x0, std::size_t y0, std::size_t w,
                      std::size_t h, Rgb c) {
    for (std::size_t y = y0; y < y0 + h; ++y) {
        for (std::size_t x = x0; x < x0 + w; ++x) img.set(x, y, c);
    }
}

inline BinaryMask rect_mask(std::size_t width, std::size_t height, std::size_t x0,
                            std::size_t y0, std::size_t w, std::size_t h) {
    BinaryMask m(width, height);
    for (std::size_t y = y0; y < y0 + h; ++y) {
        for (std::size_t x = x0; x < x0 + w; ++x) m.set(x, y, true);
    }
    return m;
}

/// 64x64 black canvas with a 16x16 skin patch at (24,24).
inline ImageBuffer patch_image() {
    ImageBuffer img(64, 64);
    fill_rect(img, 24, 24, 16, 16, kSkinTone);
    return img;
}

inline BinaryMask patch_mask() { return rect_mask(64, 64, 24, 24, 16, 16); }

/// Patch image plus five isolated skin-colored pixels well away from it.
inline ImageBuffer patch_with_salt() {
    ImageBuffer img = patch_image();
    for (auto [x, y] : {std::pair{3, 3}, {60, 4}, {5, 58}, {58, 58}, {10, 30}}) {
        img.set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), kSkinTone);
    }
    return img;
}

/// 20x20 HSV-only region and a far-away 10x10 RGB-only region, for use with
/// the swapped V reading.
inline ImageBuffer split_space_image() {
    ImageBuffer img(80, 64);
    fill_rect(img, 4, 4, 20, 20, kDimSkin);
    fill_rect(img, 60, 44, 10, 10, kPaleGray);
    return img;
}

/// Random rectangles of random colors on a random dark background.
inline ImageBuffer random_scene(std::mt19937& rng, std::size_t max_side = 48) {
    std::uniform_int_distribution<std::size_t> side(8, max_side);
    std::uniform_int_distribution<int> byte(0, 255);
    const std::size_t w = side(rng), h = side(rng);
    ImageBuffer img(w, h, Rgb{static_cast<std::uint8_t>(byte(rng) / 4),
                              static_cast<std::uint8_t>(byte(rng) / 4),
                              static_cast<std::uint8_t>(byte(rng) / 4)});
    std::uniform_int_distribution<int> count(1, 5);
    const Rgb palette[] = {kSkinTone, kDimSkin, kPaleGray, Rgb{150, 80, 40}, Rgb{220, 170, 140}};
    for (int n = count(rng); n > 0; --n) {
        std::uniform_int_distribution<std::size_t> px(0, w - 1), py(0, h - 1);
        const std::size_t x0 = px(rng), y0 = py(rng);
        std::uniform_int_distribution<std::size_t> rw(1, w - x0), rh(1, h - y0);
        Rgb c = (byte(rng) % 2 == 0)
                    ? palette[static_cast<std::size_t>(byte(rng)) % std::size(palette)]
                    : Rgb{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                          static_cast<std::uint8_t>(byte(rng))};
        fill_rect(img, x0, y0, rw(rng), rh(rng), c);
    }
    // sprinkle noise so denoise and ties get exercised
    std::uniform_int_distribution<std::size_t> px(0, w - 1), py(0, h - 1);
    for (int k = 0; k < 6; ++k) img.set(px(rng), py(rng), kSkinTone);
    return img;
}

inline BinaryMask random_mask(std::mt19937& rng, std::size_t max_side, double density) {
    std::uniform_int_distribution<std::size_t> side(1, max_side);
    std::bernoulli_distribution bit(density);
    const std::size_t w = side(rng), h = side(rng);
    BinaryMask m(w, h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) m.set(x, y, bit(rng));
    }
    return m;
}

/// Image whose feature vector lands in a well-separated cluster per class:
/// bright warm (RGB), dark (HSV), cool bluish (YCbCr).
inline ImageBuffer class_image(ColorSpaceId cls, int k, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> jitter(-6, 6);
    Rgb base;
    switch (cls) {
        case ColorSpaceId::RGB: base = Rgb{210, 150, 120}; break;
        case ColorSpaceId::HSV: base = Rgb{60, 45, 35}; break;
        case ColorSpaceId::YCbCr: base = Rgb{90, 110, 190}; break;
    }
    ImageBuffer img(8, 8);
    for (std::size_t y = 0; y < 8; ++y) {
        for (std::size_t x = 0; x < 8; ++x) {
            auto ch = [&](std::uint8_t v) {
                return static_cast<std::uint8_t>(std::clamp(v + 2 * k + jitter(rng), 0, 255));
            };
            img.set(x, y, Rgb{ch(base.r), ch(base.g), ch(base.b)});
        }
    }
    return img;
}

/// 30 examples, 10 per class, features taken from `class_image`.
inline std::vector<TrainingExample> separable_training_set() {
    std::vector<TrainingExample> data;
    for (ColorSpaceId cls : kAllSpaces) {
        for (int k = 0; k < 10; ++k) {
            const auto seed = static_cast<std::uint32_t>(100 * index_of(cls) + k);
            data.push_back({feature_vector(class_image(cls, k, seed)), cls});
        }
    }
    return data;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() /
                ("lumaswitch-" + tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << bytes;
}

/// Writes the 30-image separable set plus a manifest; returns the manifest path.
inline std::filesystem::path write_separable_manifest(const std::filesystem::path& dir) {
    std::ofstream manifest(dir / "train.txt");
    for (ColorSpaceId cls : kAllSpaces) {
        for (int k = 0; k < 10; ++k) {
            const auto seed = static_cast<std::uint32_t>(100 * index_of(cls) + k);
            const std::string name = std::string(to_string(cls)) + "_" + std::to_string(k) + ".ppm";
            save_image(class_image(cls, k, seed), dir / name);
            manifest << name << ' ' << to_string(cls) << '\n';
        }
    }
    return dir / "train.txt";
}

}  // namespace lumaswitch::fixtures
