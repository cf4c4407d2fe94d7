#include <stdexcept>

#include "lumaswitch/serial.hpp"

namespace lumaswitch::serial {

BinaryMask apply_filter(const ImageBuffer& image, ColorSpaceId space,
                        const SkinRangeFilter& filter) {
    BinaryMask mask(image.width(), image.height());
    for (std::size_t y = 0; y < image.height(); ++y) {
        for (std::size_t x = 0; x < image.width(); ++x) {
            mask.set(x, y, classify_in_space(space, image.at(x, y), filter));
        }
    }
    return mask;
}

BinaryMask denoise(const BinaryMask& mask, int min_votes) {
    const auto w = static_cast<long>(mask.width());
    const auto h = static_cast<long>(mask.height());
    BinaryMask out(mask.width(), mask.height());
    for (long y = 0; y < h; ++y) {
        for (long x = 0; x < w; ++x) {
            int votes = 0;
            for (long dy = -1; dy <= 1; ++dy) {
                for (long dx = -1; dx <= 1; ++dx) {
                    const long nx = x + dx;
                    const long ny = y + dy;
                    if (nx >= 0 && ny >= 0 && nx < w && ny < h &&
                        mask.at(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny))) {
                        ++votes;
                    }
                }
            }
            out.set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), votes >= min_votes);
        }
    }
    return out;
}

FeatureVector feature_vector(const ImageBuffer& image) {
    if (image.empty()) throw std::invalid_argument("feature_vector: image has no pixels");
    std::array<double, FeatureVector::kSize> sum{};
    for (const Rgb& p : image.pixels()) {
        const HsvPixel hsv = rgb_to_hsv(p);
        const YcbcrPixel ycc = rgb_to_ycbcr(p);
        const std::array<double, FeatureVector::kSize> v = {
            hsv.h, hsv.s, hsv.v, ycc.y, ycc.cb, ycc.cr,
            static_cast<double>(p.r), static_cast<double>(p.g), static_cast<double>(p.b)};
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
    }
    const double n = static_cast<double>(image.size());
    for (double& s : sum) s /= n;
    return FeatureVector::from_array(sum);
}

}  // namespace lumaswitch::serial
