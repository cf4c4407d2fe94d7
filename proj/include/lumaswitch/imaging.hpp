#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lumaswitch {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 8-bit RGB raster. Immutable after construction apart from
/// explicit pixel writes through `set`.
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(std::size_t width, std::size_t height, Rgb fill = {});
    ImageBuffer(std::size_t width, std::size_t height, std::vector<Rgb> pixels);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
    void set(std::size_t x, std::size_t y, Rgb value) { pixels_[y * width_ + x] = value; }

    std::span<const Rgb> pixels() const noexcept { return pixels_; }
    std::span<const Rgb> row(std::size_t y) const noexcept {
        return std::span<const Rgb>(pixels_).subspan(y * width_, width_);
    }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<Rgb> pixels_;
};

/// Per-pixel boolean raster ("logical image"). Bits are stored one per byte
/// so rows can be written from different threads.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(std::size_t width, std::size_t height, bool fill = false);
    BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return bits_.size(); }

    bool at(std::size_t x, std::size_t y) const { return bits_[y * width_ + x] != 0; }
    void set(std::size_t x, std::size_t y, bool value) { bits_[y * width_ + x] = value ? 1 : 0; }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::span<std::uint8_t> bits() noexcept { return bits_; }

    std::size_t count() const noexcept;
    bool same_shape(std::size_t width, std::size_t height) const noexcept {
        return width_ == width && height_ == height;
    }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::uint8_t> bits_;
};

class ImageError : public std::runtime_error {
public:
    enum class Kind { Missing, MalformedHeader, UnsupportedMaxval, Truncated, Unwritable };

    ImageError(Kind kind, std::filesystem::path path, const std::string& detail);

    Kind kind() const noexcept { return kind_; }
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    Kind kind_;
    std::filesystem::path path_;
};

/// Binary PPM (P6, maxval 255). Header comments are accepted.
ImageBuffer load_image(const std::filesystem::path& path);
void save_image(const ImageBuffer& image, const std::filesystem::path& path);

/// Binary PGM (P5, maxval 255): true -> 255, false -> 0. On load any
/// nonzero byte reads as true.
BinaryMask load_mask(const std::filesystem::path& path);
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Keeps pixels where the mask is set and blacks out the rest.
/// Throws std::invalid_argument when the dimensions differ.
ImageBuffer overlay(const ImageBuffer& image, const BinaryMask& mask);

}  // namespace lumaswitch
