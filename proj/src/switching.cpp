#include "lumaswitch/switching.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "lumaswitch/blobs.hpp"

namespace lumaswitch {

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::ANN: return "ann";
        case Strategy::MaxConnected: return "maxconnected";
        case Strategy::SigmaConnect: return "sigmaconnect";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view text) noexcept {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (Strategy s : {Strategy::ANN, Strategy::MaxConnected, Strategy::SigmaConnect}) {
        if (lower == to_string(s)) return s;
    }
    return std::nullopt;
}

RoutineOutput bayesian_routine(const ImageBuffer& image, ColorSpaceId space,
                               const SkinRangeFilter& filter) {
    RoutineOutput out;
    out.raw = apply_filter(image, space, filter);
    LargestComponent blob = largest_component(denoise(out.raw));
    out.mask = std::move(blob.mask);
    out.blob_size = blob.size;
    out.overlay = overlay(image, out.mask);
    return out;
}

namespace {

std::array<RoutineOutput, 3> run_all_spaces(const ImageBuffer& image,
                                            const SkinRangeFilter& filter) {
    std::array<RoutineOutput, 3> runs;
#pragma omp parallel for schedule(static, 1)
    for (int s = 0; s < 3; ++s) {
        runs[static_cast<std::size_t>(s)] = bayesian_routine(image, kAllSpaces[static_cast<std::size_t>(s)], filter);
    }
    return runs;
}

SegmentationResult from_routine(Strategy strategy, ColorSpaceId space, RoutineOutput&& run) {
    SegmentationResult r;
    r.strategy = strategy;
    r.chosen = space;
    r.blob_size = run.blob_size;
    r.mask = std::move(run.mask);
    r.overlay = std::move(run.overlay);
    r.raw_mask = std::move(run.raw);
    return r;
}

}  // namespace

SegmentationResult algorithm1_ann_switch(const ImageBuffer& image, const StoredModel& model,
                                         const SkinRangeFilter& filter) {
    model.model.validate();
    const FeatureVector features = feature_vector(image);
    const ColorSpaceId space = predict_space(model.model, features, model.normalization);
    SegmentationResult r =
        from_routine(Strategy::ANN, space, bayesian_routine(image, space, filter));
    r.per_space_sizes[index_of(space)] = r.blob_size;
    return r;
}

SegmentationResult algorithm2_max_connected(const ImageBuffer& image,
                                            const SkinRangeFilter& filter) {
    auto runs = run_all_spaces(image, filter);
    std::size_t best = 0;
    for (std::size_t s = 1; s < runs.size(); ++s) {
        if (runs[s].blob_size > runs[best].blob_size) best = s;
    }
    SpaceSizes sizes;
    for (std::size_t s = 0; s < runs.size(); ++s) sizes[s] = runs[s].blob_size;

    SegmentationResult r = from_routine(Strategy::MaxConnected, kAllSpaces[best], std::move(runs[best]));
    r.per_space_sizes = sizes;
    return r;
}

SegmentationResult algorithm3_sigma_connect(const ImageBuffer& image,
                                            const SkinRangeFilter& filter, int vote_threshold) {
    if (vote_threshold < 1 || vote_threshold > 3) {
        throw std::invalid_argument("sigma connect: vote_threshold must be 1, 2 or 3");
    }
    auto runs = run_all_spaces(image, filter);

    BinaryMask combined(image.width(), image.height());
    auto bits = combined.bits();
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const int votes = runs[0].mask.bits()[i] + runs[1].mask.bits()[i] + runs[2].mask.bits()[i];
        bits[i] = votes >= vote_threshold ? 1 : 0;
    }

    SegmentationResult r;
    r.strategy = Strategy::SigmaConnect;
    LargestComponent blob = largest_component(combined);
    r.mask = std::move(blob.mask);
    r.blob_size = blob.size;
    r.overlay = overlay(image, r.mask);
    r.raw_mask = std::move(runs[0].raw);
    for (std::size_t s = 0; s < runs.size(); ++s) r.per_space_sizes[s] = runs[s].blob_size;
    return r;
}

}  // namespace lumaswitch
