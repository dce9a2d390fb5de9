// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator
//
// Per-trial cost of the proposed pipeline against 2D-MUSIC. The size
// argument scales S, N and the search grids together.

#include "jcs/jcs.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

namespace {

using namespace jcs;

MultipathChannel scaled_channel(std::size_t scale)
{
    MultipathChannel ch;
    ch.paths = {{10.0 / kSpeedOfLight, deg_to_rad(40.0), 1.0}, {10.5 / kSpeedOfLight, deg_to_rad(50.0), 1.0}};
    ch.n_antennas = 4 * scale;
    ch.n_subcarriers = 32 * scale;
    ch.subcarrier_spacing = 400e6 / static_cast<double>(ch.n_subcarriers);
    return ch;
}

void BM_Pipeline(benchmark::State& state)
{
    const auto scale = static_cast<std::size_t>(state.range(0));
    const auto ch = scaled_channel(scale);
    const auto cfr = add_awgn(synthesize_cfr(ch, draw_frame_gains(ch, 1)), 0.3, 2);
    const BeamWeights beam{CVector(ch.n_antennas, cd{1.0}), 0};
    const auto h_a = analog_estimate(cfr, std::span(&beam, 1), 0.0, 0);
    std::vector<std::size_t> set(ch.n_antennas);
    std::iota(set.begin(), set.end(), std::size_t{0});
    const auto h_d = digital_estimates(cfr, set, ch.n_antennas, 0.0, 0);
    PipelineConfig cfg;
    cfg.music.n_sources = 2;
    cfg.music.tau_grid.points = 500 * scale + 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_pipeline(h_a, h_d, cfg, ch.subcarrier_spacing));
}

void BM_Music2d(benchmark::State& state)
{
    const auto scale = static_cast<std::size_t>(state.range(0));
    const auto ch = scaled_channel(scale);
    const auto cfr = add_awgn(synthesize_cfr(ch, draw_frame_gains(ch, 1)), 0.3, 2);
    Music2dConfig cfg;
    cfg.tau_grid.points = 20 * scale + 1;
    cfg.theta_grid.points = 18 * scale + 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(music_2d(cfr, 2, cfg, ch.subcarrier_spacing));
}

void BM_MusicToa(benchmark::State& state)
{
    const auto scale = static_cast<std::size_t>(state.range(0));
    const auto ch = scaled_channel(scale);
    const auto cfr = add_awgn(synthesize_cfr(ch, draw_frame_gains(ch, 1)), 0.3, 2);
    const BeamWeights beam{CVector(ch.n_antennas, cd{1.0}), 0};
    const auto h_a = analog_estimate(cfr, std::span(&beam, 1), 0.0, 0);
    MusicConfig cfg;
    cfg.n_sources = 2;
    for (auto _ : state)
        benchmark::DoNotOptimize(music_toa(h_a, cfg, ch.subcarrier_spacing));
}

} // namespace

BENCHMARK(BM_Pipeline)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Music2d)->RangeMultiplier(2)->Range(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MusicToa)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
