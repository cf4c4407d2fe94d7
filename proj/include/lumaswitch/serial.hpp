#pragma once

// Single-threaded straight-loop versions of the data-parallel kernels. The
// tests compare the OpenMP kernels against these and the benchmark times
// both.

#include "lumaswitch/blobs.hpp"
#include "lumaswitch/colorspace.hpp"
#include "lumaswitch/skinfilter.hpp"

namespace lumaswitch::serial {

BinaryMask apply_filter(const ImageBuffer& image, ColorSpaceId space,
                        const SkinRangeFilter& filter);

BinaryMask denoise(const BinaryMask& mask, int min_votes = kDenoiseVotes);

/// Accumulates in plain row-major order, so low-order bits can differ from
/// the parallel version.
FeatureVector feature_vector(const ImageBuffer& image);

}  // namespace lumaswitch::serial
