#include "lumaswitch/blobs.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace lumaswitch {

ComponentLabeling label_components(const BinaryMask& mask) {
    const std::size_t w = mask.width();
    const std::size_t h = mask.height();
    const auto bits = mask.bits();

    ComponentLabeling out;
    out.width = w;
    out.height = h;
    out.labels.assign(w * h, 0);

    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < bits.size(); ++start) {
        if (!bits[start] || out.labels[start] != 0) continue;

        const auto label = static_cast<std::uint32_t>(out.sizes.size() + 1);
        std::size_t size = 0;
        out.labels[start] = label;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t idx = stack.back();
            stack.pop_back();
            ++size;
            const std::size_t x = idx % w;
            const std::size_t y = idx / w;
            const std::size_t x0 = x > 0 ? x - 1 : 0;
            const std::size_t x1 = std::min(x + 1, w - 1);
            const std::size_t y0 = y > 0 ? y - 1 : 0;
            const std::size_t y1 = std::min(y + 1, h - 1);
            for (std::size_t ny = y0; ny <= y1; ++ny) {
                for (std::size_t nx = x0; nx <= x1; ++nx) {
                    const std::size_t n = ny * w + nx;
                    if (bits[n] && out.labels[n] == 0) {
                        out.labels[n] = label;
                        stack.push_back(n);
                    }
                }
            }
        }
        out.sizes.push_back(size);
    }
    return out;
}

LargestComponent largest_component(const BinaryMask& mask) {
    const ComponentLabeling labeling = label_components(mask);
    LargestComponent out{BinaryMask(mask.width(), mask.height()), 0};
    if (labeling.sizes.empty()) return out;

    // max_element returns the first maximum, i.e. the smallest label.
    const auto best = std::max_element(labeling.sizes.begin(), labeling.sizes.end());
    const auto keep = static_cast<std::uint32_t>(best - labeling.sizes.begin() + 1);
    out.size = *best;
    auto bits = out.mask.bits();
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = labeling.labels[i] == keep ? 1 : 0;
    return out;
}

bool is_single_component(const BinaryMask& mask) {
    return label_components(mask).component_count() == 1;
}

BinaryMask denoise(const BinaryMask& mask, int min_votes) {
    const std::size_t w = mask.width();
    const auto h = static_cast<std::ptrdiff_t>(mask.height());
    const auto in = mask.bits();
    BinaryMask out(mask.width(), mask.height());
    auto dst = out.bits();
    if (w == 0) return out;

#pragma omp parallel
    {
        // column sums of the 3-row band, then a 3-wide sliding window
        std::vector<int> column(w);
#pragma omp for schedule(static)
        for (std::ptrdiff_t y = 0; y < h; ++y) {
            const std::ptrdiff_t y0 = std::max<std::ptrdiff_t>(y - 1, 0);
            const std::ptrdiff_t y1 = std::min<std::ptrdiff_t>(y + 1, h - 1);
            std::fill(column.begin(), column.end(), 0);
            for (std::ptrdiff_t ny = y0; ny <= y1; ++ny) {
                const std::uint8_t* row = in.data() + static_cast<std::size_t>(ny) * w;
                for (std::size_t x = 0; x < w; ++x) column[x] += row[x];
            }
            std::uint8_t* target = dst.data() + static_cast<std::size_t>(y) * w;
            int votes = column[0] + (w > 1 ? column[1] : 0);
            for (std::size_t x = 0; x < w; ++x) {
                target[x] = votes >= min_votes ? 1 : 0;
                if (x + 2 < w) votes += column[x + 2];
                if (x >= 1) votes -= column[x - 1];
            }
        }
    }
    return out;
}

}  // namespace lumaswitch
