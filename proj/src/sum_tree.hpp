#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace lumaswitch::detail {

// Pairwise (cascade) summation of fixed-width rows. The split points depend
// only on the input length.
template <std::size_t N>
std::array<double, N> pairwise_sum(std::span<const std::array<double, N>> rows) {
    if (rows.empty()) return {};
    if (rows.size() == 1) return rows.front();
    const std::size_t half = rows.size() / 2;
    auto left = pairwise_sum<N>(rows.first(half));
    const auto right = pairwise_sum<N>(rows.subspan(half));
    for (std::size_t i = 0; i < N; ++i) left[i] += right[i];
    return left;
}

}  // namespace lumaswitch::detail
