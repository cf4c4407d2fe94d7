#include <cmath>
#include <stdexcept>
#include <vector>

#include "lumaswitch/skinfilter.hpp"

namespace lumaswitch {

namespace {

struct Channel {
    ChannelRange* range;
    std::size_t value_index;  // position in LabeledSample::value
    double domain_max;        // 255 or 1
    double step;
};

std::vector<Channel> constrained_channels(SkinRangeFilter& f, ColorSpaceId space) {
    switch (space) {
        case ColorSpaceId::RGB:
            return {{&f.rgb.r, 0, 255.0, 1.0}, {&f.rgb.g, 1, 255.0, 1.0}, {&f.rgb.b, 2, 255.0, 1.0}};
        case ColorSpaceId::HSV:
            return {{&f.hsv.h, 0, 1.0, 0.005}, {&f.hsv.s, 1, 1.0, 0.005}, {&f.hsv.v, 2, 1.0, 0.005}};
        case ColorSpaceId::YCbCr:
            return {{&f.ycbcr.cb, 1, 255.0, 1.0}, {&f.ycbcr.cr, 2, 255.0, 1.0}};
    }
    return {};
}

bool classify_values(const std::array<double, 3>& v, ColorSpaceId space,
                     const SkinRangeFilter& f) {
    switch (space) {
        case ColorSpaceId::RGB:
            return f.rgb.r.contains(v[0]) && f.rgb.g.contains(v[1]) && f.rgb.b.contains(v[2]);
        case ColorSpaceId::HSV:
            return f.hsv.h.contains(v[0]) && f.hsv.s.contains(v[1]) && f.hsv.v.contains(v[2]);
        case ColorSpaceId::YCbCr:
            return f.ycbcr.cb.contains(v[1]) && f.ycbcr.cr.contains(v[2]);
    }
    return false;
}

std::vector<double> grid(const Channel& c) {
    const auto steps = static_cast<std::size_t>(std::lround(c.domain_max / c.step));
    std::vector<double> points(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) points[k] = static_cast<double>(k) * c.step;
    return points;
}

}  // namespace

double f1_score(std::span<const LabeledSample> samples, ColorSpaceId space,
                const SkinRangeFilter& filter) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (const auto& s : samples) {
        const bool predicted = classify_values(s.value, space, filter);
        if (predicted && s.skin) ++tp;
        else if (predicted) ++fp;
        else if (s.skin) ++fn;
    }
    if (tp == 0) return 0.0;
    return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

SkinRangeFilter calibrate_ranges(std::span<const LabeledSample> samples, ColorSpaceId space,
                                 const SkinRangeFilter& initial) {
    std::size_t skin = 0;
    for (const auto& s : samples) skin += s.skin ? 1 : 0;
    if (skin == 0 || skin == samples.size()) {
        throw std::invalid_argument(
            "calibrate_ranges: samples need at least one skin and one non-skin example");
    }

    SkinRangeFilter current = initial;
    const auto channels = constrained_channels(current, space);
    double best = f1_score(samples, space, current);

    bool improved = true;
    while (improved) {
        improved = false;
        for (const Channel& c : channels) {
            const auto points = grid(c);
            for (const bool moving_lo : {true, false}) {
                const ChannelRange incumbent = *c.range;
                ChannelRange best_range = incumbent;
                for (const double p : points) {
                    if (moving_lo ? p > incumbent.hi() : p < incumbent.lo()) continue;
                    *c.range = moving_lo ? ChannelRange(p, incumbent.hi())
                                         : ChannelRange(incumbent.lo(), p);
                    const double score = f1_score(samples, space, current);
                    if (score > best) {
                        best = score;
                        best_range = *c.range;
                        improved = true;
                    }
                }
                *c.range = best_range;
            }
        }
    }
    return current;
}

}  // namespace lumaswitch
