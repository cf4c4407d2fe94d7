#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lumaswitch/imaging.hpp"

namespace lumaswitch {

/// 8-connected component labels. Label 0 is background; components are
/// numbered from 1 in row-major order of their first pixel.
struct ComponentLabeling {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint32_t> labels;
    std::vector<std::size_t> sizes;  ///< sizes[k] is the pixel count of label k+1

    std::size_t component_count() const noexcept { return sizes.size(); }
};

/// Iterative flood fill with an explicit stack; single-threaded so label
/// order stays deterministic.
ComponentLabeling label_components(const BinaryMask& mask);

struct LargestComponent {
    BinaryMask mask;
    std::size_t size = 0;
};

/// Keeps the biggest component. Equal sizes resolve to the smallest label.
LargestComponent largest_component(const BinaryMask& mask);

/// True if the set bits form exactly one 8-connected component.
bool is_single_component(const BinaryMask& mask);

/// Votes needed among the 9 cells of a 3x3 window for the output to be set.
inline constexpr int kDenoiseVotes = 4;
/// Votes for a strict 3x3 boolean median.
inline constexpr int kMedianVotes = 5;

/// 3x3 vote filter for salt-and-pepper noise. Cells outside the mask count
/// as unset. With the default threshold isolated set pixels are removed,
/// isolated holes are filled, and solid rectangles are left untouched.
BinaryMask denoise(const BinaryMask& mask, int min_votes = kDenoiseVotes);

}  // namespace lumaswitch
