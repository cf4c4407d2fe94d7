#include "lumaswitch/colorspace.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sum_tree.hpp"

namespace lumaswitch {

HsvPixel rgb_to_hsv(Rgb p) noexcept {
    const double r = p.r / 255.0;
    const double g = p.g / 255.0;
    const double b = p.b / 255.0;
    const double hi = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    const double delta = hi - lo;

    HsvPixel out;
    out.v = hi;
    out.s = hi > 0.0 ? delta / hi : 0.0;
    if (delta > 0.0) {
        double sector;
        if (p.r >= p.g && p.r >= p.b) {
            sector = (g - b) / delta;
            if (sector < 0.0) sector += 6.0;
        } else if (p.g >= p.b) {
            sector = (b - r) / delta + 2.0;
        } else {
            sector = (r - g) / delta + 4.0;
        }
        out.h = sector / 6.0;
        if (out.h >= 1.0) out.h = 0.0;
    }
    return out;
}

YcbcrPixel rgb_to_ycbcr(Rgb p) noexcept {
    const double r = p.r;
    const double g = p.g;
    const double b = p.b;
    auto clamp = [](double x) { return std::clamp(x, 0.0, 255.0); };
    return YcbcrPixel{
        clamp(0.299 * r + 0.587 * g + 0.114 * b),
        clamp(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b),
        clamp(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b),
    };
}

std::array<double, FeatureVector::kSize> FeatureVector::as_array() const noexcept {
    return {mean_h, mean_s, mean_v, mean_y, mean_cb, mean_cr, mean_r, mean_g, mean_b};
}

FeatureVector FeatureVector::from_array(const std::array<double, kSize>& v) noexcept {
    return FeatureVector{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]};
}

FeatureVector feature_vector(const ImageBuffer& image) {
    if (image.empty()) throw std::invalid_argument("feature_vector: image has no pixels");

    using Sums = std::array<double, FeatureVector::kSize>;
    const auto height = static_cast<std::ptrdiff_t>(image.height());
    std::vector<Sums> row_sums(image.height(), Sums{});

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < height; ++y) {
        Sums acc{};
        for (const Rgb& p : image.row(static_cast<std::size_t>(y))) {
            const HsvPixel hsv = rgb_to_hsv(p);
            const YcbcrPixel ycc = rgb_to_ycbcr(p);
            acc[0] += hsv.h;
            acc[1] += hsv.s;
            acc[2] += hsv.v;
            acc[3] += ycc.y;
            acc[4] += ycc.cb;
            acc[5] += ycc.cr;
            acc[6] += p.r;
            acc[7] += p.g;
            acc[8] += p.b;
        }
        row_sums[static_cast<std::size_t>(y)] = acc;
    }

    const Sums total = detail::pairwise_sum(std::span<const Sums>(row_sums));
    const double n = static_cast<double>(image.size());
    Sums means{};
    for (std::size_t i = 0; i < means.size(); ++i) means[i] = total[i] / n;
    return FeatureVector::from_array(means);
}

nlohmann::ordered_json to_json(const FeatureVector& features) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    const auto values = features.as_array();
    for (std::size_t i = 0; i < values.size(); ++i) doc[kFeatureKeys[i]] = values[i];
    return doc;
}

FeatureVector feature_vector_from_json(const nlohmann::ordered_json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("feature vector: expected a JSON object");
    std::array<double, FeatureVector::kSize> values{};
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto it = doc.find(kFeatureKeys[i]);
        if (it == doc.end() || !it->is_number()) {
            throw std::invalid_argument(std::string("feature vector: missing numeric key ") +
                                        kFeatureKeys[i]);
        }
        values[i] = it->get<double>();
    }
    return FeatureVector::from_array(values);
}

}  // namespace lumaswitch
