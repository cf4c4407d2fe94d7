#include "lumaswitch/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace lumaswitch {

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, Rgb fill)
    : width_(width), height_(height), pixels_(width * height, fill) {}

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != width_ * height_) {
        throw std::invalid_argument("ImageBuffer: pixel count does not match width*height");
    }
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, bool fill)
    : width_(width), height_(height), bits_(width * height, fill ? 1 : 0) {}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
    if (bits_.size() != width_ * height_) {
        throw std::invalid_argument("BinaryMask: bit count does not match width*height");
    }
    for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

namespace {

const char* kind_name(ImageError::Kind kind) {
    switch (kind) {
        case ImageError::Kind::Missing: return "cannot open";
        case ImageError::Kind::MalformedHeader: return "malformed header";
        case ImageError::Kind::UnsupportedMaxval: return "unsupported maxval";
        case ImageError::Kind::Truncated: return "truncated pixel data";
        case ImageError::Kind::Unwritable: return "cannot write";
    }
    return "image error";
}

struct NetpbmHeader {
    std::size_t width = 0;
    std::size_t height = 0;
};

// Reads whitespace- and comment-separated header tokens, leaving the stream
// positioned on the first raster byte.
class HeaderReader {
public:
    HeaderReader(std::istream& in, const std::filesystem::path& path) : in_(in), path_(path) {}

    std::string token() {
        skip_space_and_comments();
        std::string out;
        while (true) {
            int c = in_.peek();
            if (c == EOF || std::isspace(c) || c == '#') break;
            out.push_back(static_cast<char>(in_.get()));
        }
        if (out.empty()) fail("unexpected end of header");
        return out;
    }

    std::size_t number() {
        const std::string t = token();
        if (!std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }) ||
            t.size() > 9) {
            fail("expected a decimal number, got '" + t + "'");
        }
        return static_cast<std::size_t>(std::stoul(t));
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void end_of_header() {
        int c = in_.get();
        if (c == EOF || !std::isspace(c)) fail("missing whitespace after maxval");
    }

    [[noreturn]] void fail(const std::string& detail) const {
        throw ImageError(ImageError::Kind::MalformedHeader, path_, detail);
    }

private:
    void skip_space_and_comments() {
        while (true) {
            int c = in_.peek();
            if (c == EOF) return;
            if (std::isspace(c)) {
                in_.get();
            } else if (c == '#') {
                std::string discard;
                std::getline(in_, discard);
            } else {
                return;
            }
        }
    }

    std::istream& in_;
    const std::filesystem::path& path_;
};

NetpbmHeader read_header(std::istream& in, const std::filesystem::path& path,
                         std::string_view magic) {
    HeaderReader reader(in, path);
    const std::string m = reader.token();
    if (m != magic) reader.fail("expected magic '" + std::string(magic) + "', got '" + m + "'");
    NetpbmHeader header;
    header.width = reader.number();
    header.height = reader.number();
    if (header.width == 0 || header.height == 0) reader.fail("zero image dimension");
    const std::size_t maxval = reader.number();
    if (maxval != 255) {
        throw ImageError(ImageError::Kind::UnsupportedMaxval, path,
                         "maxval " + std::to_string(maxval) + " (only 255 is supported)");
    }
    reader.end_of_header();
    return header;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageError(ImageError::Kind::Missing, path, "file not found or unreadable");
    return in;
}

std::vector<std::uint8_t> read_raster(std::istream& in, const std::filesystem::path& path,
                                      std::size_t bytes) {
    std::vector<std::uint8_t> data(bytes);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(bytes));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got != bytes) {
        throw ImageError(ImageError::Kind::Truncated, path,
                         "expected " + std::to_string(bytes) + " bytes, found " +
                             std::to_string(got));
    }
    return data;
}

void write_file(const std::filesystem::path& path, const std::string& header,
                std::span<const std::uint8_t> payload) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ImageError(ImageError::Kind::Unwritable, path, "cannot open for writing");
    out << header;
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    if (!out) throw ImageError(ImageError::Kind::Unwritable, path, "write failed");
}

std::string header_text(std::string_view magic, std::size_t w, std::size_t h) {
    std::ostringstream os;
    os << magic << '\n' << w << ' ' << h << "\n255\n";
    return os.str();
}

}  // namespace

ImageError::ImageError(Kind kind, std::filesystem::path path, const std::string& detail)
    : std::runtime_error(path.string() + ": " + kind_name(kind) + ": " + detail),
      kind_(kind),
      path_(std::move(path)) {}

ImageBuffer load_image(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    const NetpbmHeader header = read_header(in, path, "P6");
    const auto raw = read_raster(in, path, header.width * header.height * 3);
    std::vector<Rgb> pixels(header.width * header.height);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        pixels[i] = Rgb{raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
    }
    return ImageBuffer(header.width, header.height, std::move(pixels));
}

void save_image(const ImageBuffer& image, const std::filesystem::path& path) {
    std::vector<std::uint8_t> raw;
    raw.reserve(image.size() * 3);
    for (const Rgb& p : image.pixels()) {
        raw.push_back(p.r);
        raw.push_back(p.g);
        raw.push_back(p.b);
    }
    write_file(path, header_text("P6", image.width(), image.height()), raw);
}

BinaryMask load_mask(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    const NetpbmHeader header = read_header(in, path, "P5");
    auto raw = read_raster(in, path, header.width * header.height);
    return BinaryMask(header.width, header.height, std::move(raw));
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
    std::vector<std::uint8_t> raw(mask.size());
    std::transform(mask.bits().begin(), mask.bits().end(), raw.begin(),
                   [](std::uint8_t b) -> std::uint8_t { return b ? 255 : 0; });
    write_file(path, header_text("P5", mask.width(), mask.height()), raw);
}

ImageBuffer overlay(const ImageBuffer& image, const BinaryMask& mask) {
    if (!mask.same_shape(image.width(), image.height())) {
        throw std::invalid_argument("overlay: mask is " + std::to_string(mask.width()) + "x" +
                                    std::to_string(mask.height()) + ", image is " +
                                    std::to_string(image.width()) + "x" +
                                    std::to_string(image.height()));
    }
    std::vector<Rgb> out(image.pixels().begin(), image.pixels().end());
    const auto bits = mask.bits();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!bits[i]) out[i] = Rgb{};
    }
    return ImageBuffer(image.width(), image.height(), std::move(out));
}

}  // namespace lumaswitch
