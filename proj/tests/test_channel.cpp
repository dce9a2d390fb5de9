// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace jcs;
using jcs::test::meters;
using jcs::test::small_channel;

namespace {

FrameGains unit_gains(std::size_t k, std::size_t f)
{
    return {CMatrix(k, f, cd{1.0, 0.0})};
}

} // namespace

TEST(SubcarrierRange, WidebandAndNarrowbandIndexSets)
{
    EXPECT_EQ(SubcarrierRange::wideband(128), (SubcarrierRange{-63, 63}));
    EXPECT_EQ(SubcarrierRange::wideband(128).size(), 127u);
    EXPECT_EQ(SubcarrierRange::wideband(7), (SubcarrierRange{-3, 2}));
    EXPECT_EQ(SubcarrierRange::narrowband(128, 16), (SubcarrierRange{-3, 3}));
    EXPECT_EQ(SubcarrierRange::narrowband(128, 1), SubcarrierRange::wideband(128));
}

TEST(SynthesizeCfr, BroadsideZeroDelayIsAllOnes)
{
    const auto ch = small_channel({{0.0, kPi / 2.0, 1.0}}, 4, 16, 3);
    const auto h = synthesize_cfr(ch, unit_gains(1, 3));
    for (const auto& z : h.data())
        EXPECT_LT(std::abs(z - cd{1.0, 0.0}), 1e-15);
}

TEST(SynthesizeCfr, EndfireAlternatesSign)
{
    const auto ch = small_channel({{0.0, 1e-9, 1.0}}, 6, 16, 1);
    const auto h = synthesize_cfr(ch, unit_gains(1, 1));
    for (std::size_t n = 0; n < 6; ++n)
        EXPECT_LT(std::abs(h.at(n, 0, 5) - cd{n % 2 ? -1.0 : 1.0, 0.0}), 1e-12);
}

TEST(SynthesizeCfr, MatchesDirectTwoTermSum)
{
    const auto ch = small_channel({{meters(10.0), deg_to_rad(35.0), 1.0}, {meters(13.7), deg_to_rad(121.0), 2.0}});
    const auto g = draw_frame_gains(ch, 5);
    const auto h = synthesize_cfr(ch, g);
    for (auto [n, i, s] : {std::tuple{0u, 0u, 0}, {3u, 4u, -63}, {15u, 9u, 63}, {7u, 2u, 17}}) {
        cd direct{};
        for (std::size_t k = 0; k < 2; ++k) {
            const auto& p = ch.paths[k];
            direct += g.alpha(k, i) * std::exp(cd{0.0, static_cast<double>(n) * kPi * std::cos(p.theta)}) *
                      std::exp(cd{0.0, -2.0 * kPi * s * ch.subcarrier_spacing * p.tau});
        }
        EXPECT_LT(std::abs(h.at(n, i, s) - direct), 1e-11 * (1.0 + std::abs(direct)));
    }
}

TEST(SynthesizeCfr, LinearInGains)
{
    const auto ch = small_channel({{meters(9.0), deg_to_rad(50.0), 1.0}, {meters(11.0), deg_to_rad(80.0), 1.0}});
    const auto g1 = draw_frame_gains(ch, 1);
    const auto g2 = draw_frame_gains(ch, 2);
    const auto h1 = synthesize_cfr(ch, g1);
    const auto h2 = synthesize_cfr(ch, g2);
    const auto h12 = synthesize_cfr(ch, FrameGains{g1.alpha + g2.alpha});
    for (std::size_t k = 0; k < h12.data().size(); ++k)
        EXPECT_LT(std::abs(h12.data()[k] - h1.data()[k] - h2.data()[k]), 1e-12);
}

TEST(SynthesizeCfr, SinglePathHasGainMagnitudeEverywhere)
{
    const auto ch = small_channel({{meters(12.3), deg_to_rad(64.0), 1.0}}, 8, 32, 4);
    const auto g = draw_frame_gains(ch, 9);
    const auto h = synthesize_cfr(ch, g);
    for (std::size_t n = 0; n < 8; ++n)
        for (std::size_t i = 0; i < 4; ++i)
            for (int s = h.range().first; s <= h.range().last; ++s)
                EXPECT_NEAR(std::abs(h.at(n, i, s)), std::abs(g.alpha(0, i)), 1e-12);
}

TEST(SynthesizeCfr, MirroredAzimuthConjugatesAntennaPhase)
{
    const double theta = deg_to_rad(37.0);
    const auto a = small_channel({{0.0, theta, 1.0}}, 8, 4, 1);
    const auto b = small_channel({{0.0, kPi - theta, 1.0}}, 8, 4, 1);
    const auto ha = synthesize_cfr(a, unit_gains(1, 1));
    const auto hb = synthesize_cfr(b, unit_gains(1, 1));
    for (std::size_t n = 0; n < 8; ++n)
        EXPECT_LT(std::abs(hb.at(n, 0, 0) - std::conj(ha.at(n, 0, 0))), 1e-12);
}

TEST(DrawFrameGains, ZeroPowerPathIsZero)
{
    const auto ch = small_channel({{0.0, 1.0, 1.0}, {0.0, 2.0, 0.0}});
    const auto g = draw_frame_gains(ch, 3);
    for (std::size_t i = 0; i < ch.n_frames; ++i)
        EXPECT_EQ(g.alpha(1, i), cd{});
}

TEST(DrawFrameGains, DeterministicAndUnitVariance)
{
    const auto ch = small_channel({{0.0, 1.0, 1.0}, {0.0, 2.0, 1.0}});
    EXPECT_EQ(draw_frame_gains(ch, 42).alpha, draw_frame_gains(ch, 42).alpha);
    double acc[2] = {0.0, 0.0};
    const int draws = 200;
    for (int t = 0; t < draws; ++t) {
        const auto g = draw_frame_gains(ch, 1000 + t);
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < ch.n_frames; ++i)
                acc[k] += std::norm(g.alpha(k, i));
    }
    for (double a : acc)
        EXPECT_NEAR(a / (draws * 10.0), 1.0, 0.3);
}

TEST(NoiseSigma, Examples)
{
    const auto one = small_channel({{0.0, 1.0, 1.0}});
    EXPECT_NEAR(std::pow(noise_sigma_for_snr(one, 10.0), 2), 0.1, 1e-15);
    const auto two = small_channel({{0.0, 1.0, 1.0}, {0.0, 2.0, 1.0}});
    EXPECT_NEAR(std::pow(noise_sigma_for_snr(two, 10.0), 2), 0.2, 1e-15);
    const auto four = small_channel({{0.0, 1.0, 4.0}});
    EXPECT_NEAR(std::pow(noise_sigma_for_snr(four, 1.0), 2), 4.0, 1e-14);
    try {
        noise_sigma_for_snr(one, 0.0);
        FAIL() << "expected NonPositiveSnr";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveSnr);
    }
}

TEST(AddAwgn, ZeroSigmaIsIdentityAndSeedIsDeterministic)
{
    const auto ch = small_channel({{meters(10.0), 1.0, 1.0}});
    const auto h = synthesize_cfr(ch, draw_frame_gains(ch, 1));
    EXPECT_EQ(add_awgn(h, 0.0, 7), h);
    EXPECT_EQ(add_awgn(h, 0.5, 7), add_awgn(h, 0.5, 7));
    EXPECT_NE(add_awgn(h, 0.5, 7), add_awgn(h, 0.5, 8));
}

TEST(AddAwgn, EmpiricalVariance)
{
    const auto ch = small_channel({{0.0, 1.0, 1.0}}, 16, 128, 20);
    const CfrTensor zero(16, 20, SubcarrierRange::wideband(128));
    const auto w = add_awgn(zero, 1.0, 99);
    double acc = 0.0;
    for (const auto& z : w.data())
        acc += std::norm(z);
    EXPECT_NEAR(acc / static_cast<double>(w.data().size()), 1.0, 0.05);
}

TEST(MultipathChannel, ValidateRejectsBadFields)
{
    auto ch = small_channel({{0.0, 1.0, 1.0}});
    ch.paths.clear();
    EXPECT_THROW(ch.validate(), Error);
    ch = small_channel({{-1e-9, 1.0, 1.0}});
    EXPECT_THROW(ch.validate(), Error);
    ch = small_channel({{0.0, 0.0, 1.0}});
    EXPECT_THROW(ch.validate(), Error);
    ch = small_channel({{0.0, 1.0, 1.0}}, 16, 1);
    EXPECT_THROW(ch.validate(), Error);
}
