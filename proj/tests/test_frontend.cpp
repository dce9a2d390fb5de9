// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace jcs;
using jcs::test::meters;
using jcs::test::small_channel;

namespace {

std::vector<std::size_t> iota(std::size_t m)
{
    std::vector<std::size_t> v(m);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

BeamWeights matched_rx_beam(std::size_t n, double theta)
{
    BeamWeights b{CVector(n), 0};
    for (std::size_t k = 0; k < n; ++k)
        b.beta[k] = std::polar(1.0, -static_cast<double>(k) * kPi * std::cos(theta));
    return b;
}

} // namespace

TEST(AnalogEstimate, SingleAntennaUnitBeamIsIdentity)
{
    const auto ch = small_channel({{meters(10.0), 1.1, 1.0}, {meters(12.0), 2.0, 1.0}}, 1, 64, 3);
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 1));
    const BeamWeights one{{cd{1.0}}, 0};
    const auto a = analog_estimate(h, std::span(&one, 1), 0.0, 0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t q = 0; q < a.range.size(); ++q)
            EXPECT_EQ(a.h_a(i, q), h.at(0, i, a.range.at(q)));
}

TEST(AnalogEstimate, MatchedBeamGivesCoherentGainN)
{
    const double theta = deg_to_rad(71.0);
    const auto ch = small_channel({{meters(10.0), theta, 1.0}}, 16, 128, 4);
    const auto g = draw_frame_gains(ch, 2);
    const auto h = synthesize_cfr(ch, g);
    const BeamWeights beam = matched_rx_beam(16, theta);
    const auto a = analog_estimate(h, std::span(&beam, 1), 0.0, 0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t q = 0; q < a.range.size(); ++q)
            EXPECT_NEAR(std::abs(a.h_a(i, q)), 16.0 * std::abs(g.alpha(0, i)), 1e-11);
}

TEST(AnalogEstimate, RandomBeamMatchesDirectSum)
{
    const auto ch = small_channel({{meters(8.0), 0.7, 1.0}, {meters(9.5), 1.9, 1.0}}, 4, 32, 2);
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 3));
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    std::vector<BeamWeights> beams(2, BeamWeights{CVector(4), 0});
    for (auto& b : beams)
        for (auto& z : b.beta)
            z = {nd(rng), nd(rng)};
    const auto a = analog_estimate(h, beams, 0.0, 0);
    for (auto [i, s] : {std::pair{0u, 0}, {1u, -15}, {1u, 15}}) {
        cd direct{};
        for (std::size_t n = 0; n < 4; ++n)
            direct += beams[i].beta[n] * h.at(n, i, s);
        EXPECT_LT(std::abs(a.h_a(i, a.range.offset(s)) - direct), 1e-13);
    }
}

TEST(AnalogEstimate, PerAntennaNoiseScalesWithBeamNorm)
{
    const auto ch = small_channel({{0.0, 1.0, 1.0}}, 16, 128, 50);
    const CfrTensor zero(16, 50, SubcarrierRange::wideband(128));
    const BeamWeights beam{CVector(16, cd{0.5, 0.5}), 0}; // ||beta||^2 = 8
    const auto a = analog_estimate(zero, std::span(&beam, 1), 1.0, 5);
    double acc = 0.0;
    for (const auto& z : a.h_a.data())
        acc += std::norm(z);
    EXPECT_NEAR(acc / static_cast<double>(a.h_a.data().size()), 8.0, 0.4);
    const auto b = analog_estimate(zero, std::span(&beam, 1), 1.0, 5, AnalogNoise::AtCombinerOutput);
    acc = 0.0;
    for (const auto& z : b.h_a.data())
        acc += std::norm(z);
    EXPECT_NEAR(acc / static_cast<double>(b.h_a.data().size()), 1.0, 0.05);
}

TEST(AnalogEstimate, RejectsWrongBeamCount)
{
    const auto ch = small_channel({{0.0, 1.0, 1.0}}, 4, 16, 3);
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 1));
    const std::vector<BeamWeights> two(2, BeamWeights{CVector(4, cd{1.0}), 0});
    try {
        analog_estimate(h, two, 0.0, 0);
        FAIL() << "expected ShapeMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
    }
}

TEST(DigitalEstimates, NoiselessIsNarrowbandSlice)
{
    const auto ch = small_channel({{meters(10.0), 1.0, 1.0}}, 16, 128, 3);
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 1));
    const auto set = iota(16);
    const auto d = digital_estimates(h, set, 16, 0.0, 0);
    EXPECT_EQ(d.range(), (SubcarrierRange{-3, 3}));
    for (std::size_t j = 0; j < 16; ++j)
        for (std::size_t i = 0; i < 3; ++i)
            for (int s = -3; s <= 3; ++s)
                EXPECT_EQ(d.at(j, i, s), h.at(j, i, s));
}

TEST(DigitalEstimates, SingleAntennaMatchesOneAntennaAnalog)
{
    const auto ch = small_channel({{meters(10.0), 1.0, 1.0}}, 1, 64, 2);
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 1));
    const std::vector<std::size_t> set{0};
    const auto d = digital_estimates(h, set, 1, 0.0, 0);
    const BeamWeights one{{cd{1.0}}, 0};
    const auto a = analog_estimate(h, std::span(&one, 1), 0.0, 0);
    ASSERT_EQ(d.range(), a.range);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t q = 0; q < a.range.size(); ++q)
            EXPECT_EQ(d.at(0, i, a.range.at(q)), a.h_a(i, q));
}

TEST(DigitalEstimates, NoiseVariance)
{
    const CfrTensor zero(16, 200, SubcarrierRange::wideband(128));
    const auto set = iota(16);
    const auto d = digital_estimates(zero, set, 16, 0.5, 9);
    double acc = 0.0;
    for (const auto& z : d.data())
        acc += std::norm(z);
    EXPECT_NEAR(acc / static_cast<double>(d.data().size()), 0.25, 0.25 * 0.05);
}

TEST(DigitalEstimates, BadAntennaSets)
{
    const CfrTensor zero(4, 1, SubcarrierRange::wideband(16));
    for (const auto& set : {std::vector<std::size_t>{0, 4}, std::vector<std::size_t>{1, 1}}) {
        try {
            digital_estimates(zero, set, 2, 0.0, 0);
            FAIL() << "expected BadAntennaSet";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::BadAntennaSet);
        }
    }
    const std::vector<std::size_t> three{0, 1, 2};
    EXPECT_THROW(digital_estimates(zero, three, 2, 0.0, 0), Error);
}

TEST(Mux, DemultiplexExamples)
{
    CVector x(8);
    for (std::size_t k = 0; k < 8; ++k)
        x[k] = cd{static_cast<double>(k), 0.0};
    const auto s = demultiplex(x, 4);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s[1], (CVector{cd{1.0}, cd{5.0}}));
    const auto one = demultiplex(x, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], x);
    const MuxSchedule sched{{3, 7, 11, 15}};
    EXPECT_EQ(sched.antenna_for_sample(5), 7u);
}

TEST(Mux, RoundTripIsLossless)
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> len(0, 300), mm(1, 20);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 200; ++t) {
        CVector x(len(rng));
        for (auto& z : x)
            z = {nd(rng), nd(rng)};
        const std::size_t m = mm(rng);
        EXPECT_EQ(multiplex(demultiplex(x, m)), x);
    }
}

TEST(MrcIir, MemoryOneKeepsWeightsAndZeroTakesConjugateDc)
{
    const double theta = deg_to_rad(52.0);
    const auto ch = small_channel({{meters(10.0), theta, 1.0}}, 8, 128, 2);
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 4));
    const auto set = iota(8);
    const auto d = digital_estimates(h, set, 8, 0.0, 0);
    const BeamWeights prev{CVector(8, cd{0.3, -0.2}), 0};
    EXPECT_EQ(update_beam_mrc_iir(prev, d, 0, 1.0).beta, prev.beta);
    const auto mrc = update_beam_mrc_iir(prev, d, 1, 0.0);
    for (std::size_t m = 0; m < 8; ++m)
        EXPECT_EQ(mrc.beta[m], std::conj(d.at(m, 1, 0)));
    // Noiseless single path: matched beam, beta_m proportional to e^{-j m pi cos theta}.
    const cd ref = mrc.beta[0];
    for (std::size_t m = 0; m < 8; ++m)
        EXPECT_LT(std::abs(mrc.beta[m] / ref - std::polar(1.0, -static_cast<double>(m) * kPi * std::cos(theta))),
                  1e-12);
}

TEST(MrcIir, AntennasOutsideSetKeepWeights)
{
    const auto ch = small_channel({{meters(10.0), 1.0, 1.0}}, 8, 128, 1);
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 4));
    const std::vector<std::size_t> set{1, 4};
    const auto d = digital_estimates(h, set, 2, 0.0, 0);
    const BeamWeights prev{CVector(8, cd{2.0}), 0};
    const auto out = update_beam_mrc_iir(prev, d, 0, 0.0);
    for (std::size_t m : {0u, 2u, 3u, 5u, 6u, 7u})
        EXPECT_EQ(out.beta[m], cd{2.0});
}

TEST(MrcIir, ContractsByMuPerStep)
{
    const auto ch = small_channel({{meters(10.0), 1.3, 1.0}}, 8, 128, 1);
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 6));
    const auto set = iota(8);
    const auto d = digital_estimates(h, set, 8, 0.0, 0);
    CVector target(8);
    for (std::size_t m = 0; m < 8; ++m)
        target[m] = std::conj(d.at(m, 0, 0));
    auto dist = [&](const BeamWeights& b) {
        double acc = 0.0;
        for (std::size_t m = 0; m < 8; ++m)
            acc += std::norm(b.beta[m] - target[m]);
        return std::sqrt(acc);
    };
    const double mu = 0.7;
    BeamWeights b{CVector(8, cd{1.0, 1.0}), 0};
    for (int step = 0; step < 10; ++step) {
        const double before = dist(b);
        b = update_beam_mrc_iir(b, d, 0, mu);
        EXPECT_NEAR(dist(b), mu * before, 1e-12 * (1.0 + before));
    }
}

TEST(MrcIir, MissingDcSubcarrier)
{
    DigitalEstimateSet d({0}, 1, SubcarrierRange{1, 3});
    const BeamWeights prev{CVector(1, cd{1.0}), 0};
    try {
        update_beam_mrc_iir(prev, d, 0, 0.0);
        FAIL() << "expected MissingDcSubcarrier";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingDcSubcarrier);
    }
}

TEST(SamplingRate, PaperArithmetic)
{
    EXPECT_DOUBLE_EQ(aggregate_sampling_rate(Architecture::Analog, 16, 400e6), 400e6);
    EXPECT_DOUBLE_EQ(aggregate_sampling_rate(Architecture::Proposed, 16, 400e6), 800e6);
    EXPECT_DOUBLE_EQ(aggregate_sampling_rate(Architecture::FullMimo, 16, 400e6), 6.4e9);
}

TEST(EquivalentClassical, SameAggregateRate)
{
    const auto base = small_channel({{0.0, 1.0, 1.0}});
    for (std::size_t np : {2u, 4u, 8u, 16u}) {
        const auto eq = equivalent_classical_channel(base, np);
        EXPECT_EQ(eq.n_antennas, np);
        EXPECT_EQ(eq.n_subcarriers, 256u / np);
        EXPECT_DOUBLE_EQ(eq.subcarrier_spacing, base.subcarrier_spacing);
        EXPECT_DOUBLE_EQ(static_cast<double>(np) * eq.bandwidth(), 2.0 * base.bandwidth());
    }
    EXPECT_THROW(equivalent_classical_channel(base, 3), Error);
}

TEST(BeamWeights, RejectsZeroOrNonFinite)
{
    EXPECT_THROW((BeamWeights{CVector(4), 0}.validate()), Error);
    EXPECT_THROW((BeamWeights{CVector{}, 0}.validate()), Error);
    EXPECT_THROW((BeamWeights{CVector{cd{std::nan(""), 0.0}}, 0}.validate()), Error);
}
