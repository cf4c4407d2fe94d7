// Serial reference kernels against their OpenMP counterparts on synthetic
// frames of a few sizes. Set OMP_NUM_THREADS to vary the thread count.

#include <benchmark/benchmark.h>

#include <random>

#include "lumaswitch/blobs.hpp"
#include "lumaswitch/colorspace.hpp"
#include "lumaswitch/serial.hpp"
#include "lumaswitch/skinfilter.hpp"
#include "lumaswitch/switching.hpp"

namespace {

using namespace lumaswitch;

// Skin-colored blocks on noise, so every kernel sees mixed input.
ImageBuffer frame(std::size_t side) {
    std::mt19937 rng(static_cast<std::uint32_t>(side));
    std::uniform_int_distribution<int> byte(0, 255);
    ImageBuffer img(side, side);
    for (std::size_t y = 0; y < side; ++y) {
        for (std::size_t x = 0; x < side; ++x) {
            const bool skin = ((x / 32) + (y / 32)) % 3 == 0;
            img.set(x, y, skin ? Rgb{180, 120, 100}
                               : Rgb{static_cast<std::uint8_t>(byte(rng)),
                                     static_cast<std::uint8_t>(byte(rng)),
                                     static_cast<std::uint8_t>(byte(rng))});
        }
    }
    return img;
}

const SkinRangeFilter kFilter = SkinRangeFilter::table_defaults();

void BM_ApplyFilterSerial(benchmark::State& state) {
    const ImageBuffer img = frame(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::apply_filter(img, ColorSpaceId::HSV, kFilter));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_ApplyFilterParallel(benchmark::State& state) {
    const ImageBuffer img = frame(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(apply_filter(img, ColorSpaceId::HSV, kFilter));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_DenoiseSerial(benchmark::State& state) {
    const BinaryMask mask = apply_filter(frame(static_cast<std::size_t>(state.range(0))),
                                         ColorSpaceId::RGB, kFilter);
    for (auto _ : state) benchmark::DoNotOptimize(serial::denoise(mask));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mask.size()));
}

void BM_DenoiseParallel(benchmark::State& state) {
    const BinaryMask mask = apply_filter(frame(static_cast<std::size_t>(state.range(0))),
                                         ColorSpaceId::RGB, kFilter);
    for (auto _ : state) benchmark::DoNotOptimize(denoise(mask));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mask.size()));
}

void BM_FeatureVectorSerial(benchmark::State& state) {
    const ImageBuffer img = frame(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::feature_vector(img));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_FeatureVectorParallel(benchmark::State& state) {
    const ImageBuffer img = frame(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(feature_vector(img));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_MaxConnected(benchmark::State& state) {
    const ImageBuffer img = frame(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(algorithm2_max_connected(img, kFilter));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

}  // namespace

BENCHMARK(BM_ApplyFilterSerial)->Arg(256)->Arg(1024)->Arg(2048)->UseRealTime();
BENCHMARK(BM_ApplyFilterParallel)->Arg(256)->Arg(1024)->Arg(2048)->UseRealTime();
BENCHMARK(BM_DenoiseSerial)->Arg(256)->Arg(1024)->Arg(2048)->UseRealTime();
BENCHMARK(BM_DenoiseParallel)->Arg(256)->Arg(1024)->Arg(2048)->UseRealTime();
BENCHMARK(BM_FeatureVectorSerial)->Arg(256)->Arg(1024)->Arg(2048)->UseRealTime();
BENCHMARK(BM_FeatureVectorParallel)->Arg(256)->Arg(1024)->Arg(2048)->UseRealTime();
BENCHMARK(BM_MaxConnected)->Arg(1024)->UseRealTime();

BENCHMARK_MAIN();
