#pragma once

#include <array>

#include <json.hpp>

#include "lumaswitch/imaging.hpp"

namespace lumaswitch {

/// Hexcone HSV, every component a fraction. Hue lies in [0,1).
struct HsvPixel {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;
};

/// Full-range BT.601, components kept as reals in [0,255].
struct YcbcrPixel {
    double y = 0.0;
    double cb = 0.0;
    double cr = 0.0;
};

// Achromatic pixels get hue 0; black gets saturation 0.
HsvPixel rgb_to_hsv(Rgb p) noexcept;
YcbcrPixel rgb_to_ycbcr(Rgb p) noexcept;

/// Per-image channel means in the fixed order (H,S,V,Y,Cb,Cr,R,G,B).
/// HSV means are fractions; the other six are on the 0..255 scale.
struct FeatureVector {
    static constexpr std::size_t kSize = 9;

    double mean_h = 0.0;
    double mean_s = 0.0;
    double mean_v = 0.0;
    double mean_y = 0.0;
    double mean_cb = 0.0;
    double mean_cr = 0.0;
    double mean_r = 0.0;
    double mean_g = 0.0;
    double mean_b = 0.0;

    std::array<double, kSize> as_array() const noexcept;
    static FeatureVector from_array(const std::array<double, kSize>& values) noexcept;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Key names in serialization order.
inline constexpr std::array<const char*, FeatureVector::kSize> kFeatureKeys = {
    "mean_h", "mean_s", "mean_v", "mean_y", "mean_cb", "mean_cr", "mean_r", "mean_g", "mean_b"};

/// Row sums run in parallel, then combine pairwise in a fixed tree, so the
/// result does not depend on the thread count.
/// Throws std::invalid_argument on an empty image.
FeatureVector feature_vector(const ImageBuffer& image);

nlohmann::ordered_json to_json(const FeatureVector& features);
/// Throws std::invalid_argument when a key is missing or not a number.
FeatureVector feature_vector_from_json(const nlohmann::ordered_json& doc);

}  // namespace lumaswitch
