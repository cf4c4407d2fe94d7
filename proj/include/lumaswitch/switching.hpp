#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "lumaswitch/imaging.hpp"
#include "lumaswitch/mlp.hpp"
#include "lumaswitch/skinfilter.hpp"

namespace lumaswitch {

enum class Strategy { ANN, MaxConnected, SigmaConnect };

std::string_view to_string(Strategy s) noexcept;
/// Accepts "ann", "maxconnected", "sigmaconnect" (case-insensitive).
std::optional<Strategy> parse_strategy(std::string_view text) noexcept;

/// Filter -> denoise -> largest blob -> overlay, in one color space.
struct RoutineOutput {
    BinaryMask raw;   ///< range-filter output before noise removal
    BinaryMask mask;  ///< largest blob after noise removal
    std::size_t blob_size = 0;
    ImageBuffer overlay;
};

RoutineOutput bayesian_routine(const ImageBuffer& image, ColorSpaceId space,
                               const SkinRangeFilter& filter);

/// Per-space blob sizes; unset entries were not computed by the strategy.
using SpaceSizes = std::array<std::optional<std::size_t>, 3>;

struct SegmentationResult {
    Strategy strategy = Strategy::MaxConnected;
    /// The chosen space, or nullopt for the combined (SigmaConnect) result.
    std::optional<ColorSpaceId> chosen;
    BinaryMask mask;
    std::size_t blob_size = 0;
    ImageBuffer overlay;
    SpaceSizes per_space_sizes;
    /// Range-filter mask of the chosen space (RGB for the combined result).
    BinaryMask raw_mask;

    std::string_view chosen_name() const noexcept {
        return chosen ? to_string(*chosen) : std::string_view("Combined");
    }
};

/// Feature vector -> network -> routine in the predicted space.
SegmentationResult algorithm1_ann_switch(const ImageBuffer& image, const StoredModel& model,
                                         const SkinRangeFilter& filter);

/// Runs the routine in all three spaces and keeps the biggest blob; equal
/// sizes resolve in RGB, HSV, YCbCr order.
SegmentationResult algorithm2_max_connected(const ImageBuffer& image,
                                            const SkinRangeFilter& filter);

/// Adds up the three per-space blobs, keeps pixels with at least
/// `vote_threshold` votes (1..3), then takes the largest component.
/// Throws std::invalid_argument for a threshold outside 1..3.
SegmentationResult algorithm3_sigma_connect(const ImageBuffer& image,
                                            const SkinRangeFilter& filter,
                                            int vote_threshold = 1);

}  // namespace lumaswitch
