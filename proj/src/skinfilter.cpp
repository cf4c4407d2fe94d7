#include "lumaswitch/skinfilter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <span>
#include <string>

namespace lumaswitch {

std::string_view to_string(ColorSpaceId id) noexcept {
    switch (id) {
        case ColorSpaceId::RGB: return "RGB";
        case ColorSpaceId::HSV: return "HSV";
        case ColorSpaceId::YCbCr: return "YCbCr";
    }
    return "?";
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::optional<ColorSpaceId> parse_color_space(std::string_view text) noexcept {
    for (ColorSpaceId id : kAllSpaces) {
        if (iequals(text, to_string(id))) return id;
    }
    return std::nullopt;
}

SkinRangeFilter SkinRangeFilter::table_defaults(ValueRangeReading reading) noexcept {
    SkinRangeFilter f;
    f.rgb = {ChannelRange(95, 255), ChannelRange(40, 255), ChannelRange(20, 255)};
    const ChannelRange value = reading == ValueRangeReading::ClippedUpper
                                   ? ChannelRange(0.38, 1.0)
                                   : ChannelRange(0.112, 0.38);
    f.hsv = {ChannelRange(0.04, 0.0882), ChannelRange(0.11, 0.68), value};
    f.ycbcr = {ChannelRange(100, 125), ChannelRange(135, 170)};
    return f;
}

bool classify_pixel(const Rgb& p, const SkinRangeFilter& f) noexcept {
    return f.rgb.r.contains(p.r) && f.rgb.g.contains(p.g) && f.rgb.b.contains(p.b);
}

bool classify_pixel(const HsvPixel& p, const SkinRangeFilter& f) noexcept {
    return f.hsv.h.contains(p.h) && f.hsv.s.contains(p.s) && f.hsv.v.contains(p.v);
}

bool classify_pixel(const YcbcrPixel& p, const SkinRangeFilter& f) noexcept {
    return f.ycbcr.cb.contains(p.cb) && f.ycbcr.cr.contains(p.cr);
}

bool classify_in_space(ColorSpaceId space, Rgb p, const SkinRangeFilter& filter) noexcept {
    switch (space) {
        case ColorSpaceId::RGB: return classify_pixel(p, filter);
        case ColorSpaceId::HSV: return classify_pixel(rgb_to_hsv(p), filter);
        case ColorSpaceId::YCbCr: return classify_pixel(rgb_to_ycbcr(p), filter);
    }
    return false;
}

std::array<double, 3> to_space(ColorSpaceId space, Rgb p) noexcept {
    switch (space) {
        case ColorSpaceId::RGB:
            return {static_cast<double>(p.r), static_cast<double>(p.g), static_cast<double>(p.b)};
        case ColorSpaceId::HSV: {
            const HsvPixel h = rgb_to_hsv(p);
            return {h.h, h.s, h.v};
        }
        case ColorSpaceId::YCbCr: {
            const YcbcrPixel y = rgb_to_ycbcr(p);
            return {y.y, y.cb, y.cr};
        }
    }
    return {};
}

namespace {

// One row for a fixed space; `f` is a local copy so the byte stores into
// `out` cannot force the bounds to be reloaded.
template <ColorSpaceId Space>
void filter_row(std::span<const Rgb> row, std::uint8_t* out, const SkinRangeFilter& f) {
    for (std::size_t x = 0; x < row.size(); ++x) {
        if constexpr (Space == ColorSpaceId::RGB) {
            out[x] = classify_pixel(row[x], f) ? 1 : 0;
        } else if constexpr (Space == ColorSpaceId::HSV) {
            out[x] = classify_pixel(rgb_to_hsv(row[x]), f) ? 1 : 0;
        } else {
            out[x] = classify_pixel(rgb_to_ycbcr(row[x]), f) ? 1 : 0;
        }
    }
}

}  // namespace

BinaryMask apply_filter(const ImageBuffer& image, ColorSpaceId space,
                        const SkinRangeFilter& filter) {
    BinaryMask mask(image.width(), image.height());
    auto bits = mask.bits();
    const auto height = static_cast<std::ptrdiff_t>(image.height());
    const std::size_t width = image.width();

#pragma omp parallel
    {
        const SkinRangeFilter f = filter;
#pragma omp for schedule(static)
        for (std::ptrdiff_t y = 0; y < height; ++y) {
            const auto row = image.row(static_cast<std::size_t>(y));
            std::uint8_t* out = bits.data() + static_cast<std::size_t>(y) * width;
            switch (space) {
                case ColorSpaceId::RGB: filter_row<ColorSpaceId::RGB>(row, out, f); break;
                case ColorSpaceId::HSV: filter_row<ColorSpaceId::HSV>(row, out, f); break;
                case ColorSpaceId::YCbCr: filter_row<ColorSpaceId::YCbCr>(row, out, f); break;
            }
        }
    }
    return mask;
}

// ---------------------------------------------------------------------------

namespace {

// Channel order used by FilterConfigBuilder.
constexpr std::array<std::string_view, 8> kChannelKeys = {"rgb.r", "rgb.g", "rgb.b", "hsv.h",
                                                          "hsv.s", "hsv.v", "ycbcr.cb", "ycbcr.cr"};

std::array<ChannelRange*, 8> channels(SkinRangeFilter& f) {
    return {&f.rgb.r, &f.rgb.g, &f.rgb.b, &f.hsv.h, &f.hsv.s, &f.hsv.v, &f.ycbcr.cb, &f.ycbcr.cr};
}

double parse_number(std::string_view key, std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw std::invalid_argument("filter config: '" + std::string(key) +
                                    "' has non-numeric value '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

FilterConfigBuilder::FilterConfigBuilder() {
    SkinRangeFilter defaults = SkinRangeFilter::table_defaults();
    const auto ranges = channels(defaults);
    for (std::size_t c = 0; c < kChannels; ++c) bounds_[c] = {ranges[c]->lo(), ranges[c]->hi()};
}

bool FilterConfigBuilder::apply(std::string_view key, std::string_view value) {
    if (iequals(key, "hsv.v.reading")) {
        ValueRangeReading reading;
        if (iequals(value, "clipped")) {
            reading = ValueRangeReading::ClippedUpper;
        } else if (iequals(value, "swapped")) {
            reading = ValueRangeReading::Swapped;
        } else {
            throw std::invalid_argument("filter config: hsv.v.reading must be clipped or swapped");
        }
        const ChannelRange v = SkinRangeFilter::table_defaults(reading).hsv.v;
        bounds_[5] = {v.lo(), v.hi()};
        return true;
    }

    const auto dot = key.rfind('.');
    if (dot == std::string_view::npos) return false;
    const std::string_view bound = key.substr(dot + 1);
    const bool is_lo = iequals(bound, "lo");
    if (!is_lo && !iequals(bound, "hi")) return false;
    for (std::size_t c = 0; c < kChannels; ++c) {
        if (iequals(key.substr(0, dot), kChannelKeys[c])) {
            bounds_[c][is_lo ? 0 : 1] = parse_number(key, value);
            return true;
        }
    }
    return false;
}

SkinRangeFilter FilterConfigBuilder::finish(std::ostream& log) const {
    SkinRangeFilter filter;
    const auto ranges = channels(filter);
    for (std::size_t c = 0; c < kChannels; ++c) {
        const auto [lo, hi] = bounds_[c];
        if (lo > hi) {
            log << "filter config: " << kChannelKeys[c] << " range [" << lo << ", " << hi
                << "] is inverted; using [" << hi << ", " << lo << "]\n";
        }
        *ranges[c] = ChannelRange(lo, hi);
    }
    return filter;
}

SkinRangeFilter parse_filter_config(std::istream& in, std::ostream& log) {
    FilterConfigBuilder builder;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) continue;
        const auto where = "filter config line " + std::to_string(line_no) + ": ";
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument(where + "expected key = value");
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        try {
            if (!builder.apply(key, value)) {
                throw std::invalid_argument("unknown key '" + std::string(key) + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        }
    }
    return builder.finish(log);
}

nlohmann::ordered_json to_json(const SkinRangeFilter& f) {
    auto pair = [](const ChannelRange& r) { return nlohmann::ordered_json::array({r.lo(), r.hi()}); };
    nlohmann::ordered_json doc;
    doc["rgb"] = {{"r", pair(f.rgb.r)}, {"g", pair(f.rgb.g)}, {"b", pair(f.rgb.b)}};
    doc["hsv"] = {{"h", pair(f.hsv.h)}, {"s", pair(f.hsv.s)}, {"v", pair(f.hsv.v)}};
    doc["ycbcr"] = {{"cb", pair(f.ycbcr.cb)}, {"cr", pair(f.ycbcr.cr)}};
    return doc;
}

}  // namespace lumaswitch
