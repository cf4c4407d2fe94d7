#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lumaswitch/colorspace.hpp"
#include "lumaswitch/imaging.hpp"

namespace lumaswitch {

/// The three candidate spaces; the integer value is the class index used by
/// the network and by every tie-break (RGB < HSV < YCbCr).
enum class ColorSpaceId : std::uint8_t { RGB = 0, HSV = 1, YCbCr = 2 };

inline constexpr std::array<ColorSpaceId, 3> kAllSpaces = {ColorSpaceId::RGB, ColorSpaceId::HSV,
                                                           ColorSpaceId::YCbCr};

constexpr std::size_t index_of(ColorSpaceId id) noexcept { return static_cast<std::size_t>(id); }
std::string_view to_string(ColorSpaceId id) noexcept;
/// Accepts "RGB", "HSV", "YCbCr" (case-insensitive).
std::optional<ColorSpaceId> parse_color_space(std::string_view text) noexcept;

/// Closed interval [lo, hi]. Out-of-order bounds are swapped on construction.
class ChannelRange {
public:
    constexpr ChannelRange() = default;
    constexpr ChannelRange(double lo, double hi) noexcept
        : lo_(lo <= hi ? lo : hi), hi_(lo <= hi ? hi : lo) {}

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }
    constexpr bool contains(double value) const noexcept { return lo_ <= value && value <= hi_; }

    friend constexpr bool operator==(const ChannelRange&, const ChannelRange&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Which reading of the printed HSV value range "0.38 - 0.112" to use.
enum class ValueRangeReading {
    ClippedUpper,  ///< [0.38, 1.0]
    Swapped,       ///< [0.112, 0.38]
};

struct RgbRanges {
    ChannelRange r, g, b;
    friend bool operator==(const RgbRanges&, const RgbRanges&) = default;
};
struct HsvRanges {
    ChannelRange h, s, v;
    friend bool operator==(const HsvRanges&, const HsvRanges&) = default;
};
// No luma range: only the two chroma channels are constrained.
struct YcbcrRanges {
    ChannelRange cb, cr;
    friend bool operator==(const YcbcrRanges&, const YcbcrRanges&) = default;
};

struct SkinRangeFilter {
    RgbRanges rgb;
    HsvRanges hsv;
    YcbcrRanges ycbcr;

    /// R 95-255, G 40-255, B 20-255; H 0.04-0.0882, S 0.11-0.68, V per
    /// `reading`; Cb 100-125, Cr 135-170.
    static SkinRangeFilter table_defaults(
        ValueRangeReading reading = ValueRangeReading::ClippedUpper) noexcept;

    friend bool operator==(const SkinRangeFilter&, const SkinRangeFilter&) = default;
};

bool classify_pixel(const Rgb& p, const SkinRangeFilter& filter) noexcept;
bool classify_pixel(const HsvPixel& p, const SkinRangeFilter& filter) noexcept;
bool classify_pixel(const YcbcrPixel& p, const SkinRangeFilter& filter) noexcept;

/// Converts an RGB pixel into `space` and classifies it there.
bool classify_in_space(ColorSpaceId space, Rgb p, const SkinRangeFilter& filter) noexcept;

/// Channel values of `p` in `space` in filter order: (r,g,b), (h,s,v) or
/// (y,cb,cr).
std::array<double, 3> to_space(ColorSpaceId space, Rgb p) noexcept;

/// Classifies every pixel; rows are processed in parallel.
BinaryMask apply_filter(const ImageBuffer& image, ColorSpaceId space,
                        const SkinRangeFilter& filter);

// ---------------------------------------------------------------------------
// Configuration

/// Parses "space.channel.lo|hi = value" lines (plus "hsv.v.reading =
/// clipped|swapped") on top of the default ranges. Blank lines and '#'
/// comments are skipped. Swapped bounds are normalized and reported on `log`.
/// Throws std::invalid_argument naming the line on unknown keys or bad values.
SkinRangeFilter parse_filter_config(std::istream& in, std::ostream& log);

/// Collects filter keys in any order and normalizes each range once at the
/// end, so "lo" and "hi" lines for one channel do not interact.
class FilterConfigBuilder {
public:
    FilterConfigBuilder();

    /// Applies one "space.channel.lo|hi" (or "hsv.v.reading") key. Returns
    /// false if the key is not a filter key; throws std::invalid_argument on
    /// a bad value.
    bool apply(std::string_view key, std::string_view value);

    /// Ranges with inverted bounds are swapped and reported on `log`.
    SkinRangeFilter finish(std::ostream& log) const;

private:
    static constexpr std::size_t kChannels = 8;
    std::array<std::array<double, 2>, kChannels> bounds_{};
};

nlohmann::ordered_json to_json(const SkinRangeFilter& filter);

// ---------------------------------------------------------------------------
// Calibration

struct LabeledSample {
    std::array<double, 3> value;  ///< pixel in the calibrated space, filter order
    bool skin = false;
};

/// F1 score of classifying `samples` with `filter` in `space`. Returns 0 when
/// nothing is predicted as skin.
double f1_score(std::span<const LabeledSample> samples, ColorSpaceId space,
                const SkinRangeFilter& filter);

/// Coordinate search over the bounds of `space`'s constrained channels. Each
/// bound in turn is moved to the grid position (step 1 on 0..255 channels,
/// 0.005 on 0..1 channels) with the best F1, keeping the incumbent on ties,
/// until a full pass makes no strict improvement. Ranges of the other two
/// spaces are returned unchanged.
/// Throws std::invalid_argument if the samples hold only one class.
SkinRangeFilter calibrate_ranges(std::span<const LabeledSample> samples, ColorSpaceId space,
                                 const SkinRangeFilter& initial);

}  // namespace lumaswitch
