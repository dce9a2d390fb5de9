// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace jcs;
using jcs::test::exponentials;

TEST(MatrixPencil, ConstantVectorIsBroadside)
{
    const CVector h(16, cd{0.7, 0.2});
    const auto f = matrix_pencil(h, 8);
    ASSERT_EQ(f.phase_steps.size(), 1u);
    EXPECT_NEAR(f.phase_steps[0], 0.0, 1e-12);
    EXPECT_NEAR(phase_step_to_angle(f.phase_steps[0]), 90.0, 1e-9);
}

TEST(MatrixPencil, SixtyDegreeSteering)
{
    const auto h = exponentials(16, {{cd{1.0}, kPi * std::cos(deg_to_rad(60.0))}});
    const auto f = matrix_pencil(h, 8);
    ASSERT_EQ(f.phase_steps.size(), 1u);
    EXPECT_NEAR(f.phase_steps[0], kPi / 2.0, 1e-9);
    EXPECT_NEAR(phase_step_to_angle(f.phase_steps[0]), 60.0, 1e-7);
}

TEST(MatrixPencil, TwoExponentials)
{
    const auto h = exponentials(16, {{cd{1.0}, kPi * 0.2}, {cd{0.6, 0.5}, kPi * -0.4}});
    auto f = matrix_pencil(h, 8);
    ASSERT_EQ(f.phase_steps.size(), 2u);
    std::sort(f.phase_steps.begin(), f.phase_steps.end());
    EXPECT_NEAR(f.phase_steps[0], -0.4 * kPi, 1e-8);
    EXPECT_NEAR(f.phase_steps[1], 0.2 * kPi, 1e-8);
}

TEST(MatrixPencil, ScaleInvariant)
{
    const auto h = exponentials(16, {{cd{1.0}, 0.9}, {cd{0.3}, -1.7}});
    auto base = matrix_pencil(h, 8).phase_steps;
    for (cd scale : {cd{1e-6}, cd{3.0, -4.0}, cd{1e5, 1e5}}) {
        CVector g = h;
        for (auto& z : g)
            z *= scale;
        auto scaled = matrix_pencil(g, 8).phase_steps;
        ASSERT_EQ(scaled.size(), base.size());
        std::sort(base.begin(), base.end());
        std::sort(scaled.begin(), scaled.end());
        for (std::size_t k = 0; k < base.size(); ++k)
            EXPECT_NEAR(scaled[k], base[k], 1e-9);
    }
}

TEST(MatrixPencil, RandomSingleExponentialProperty)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(1.0, 179.0), ph(-kPi, kPi);
    for (int t = 0; t < 50; ++t) {
        const double theta = ang(rng);
        const auto h = exponentials(16, {{std::polar(1.0, ph(rng)), kPi * std::cos(deg_to_rad(theta))}});
        const auto f = matrix_pencil(h, PencilConfig{});
        ASSERT_EQ(f.phase_steps.size(), 1u);
        EXPECT_NEAR(phase_step_to_angle(f.phase_steps[0]), theta, 1e-6) << theta;
    }
}

TEST(MatrixPencil, RankRulesAgreeOnExactInput)
{
    const auto h = exponentials(16, {{cd{1.0}, 0.5}, {cd{0.8}, 2.0}, {cd{0.5}, -1.0}});
    const auto tol = matrix_pencil(h, PencilConfig{8, 1e-8, PencilRankRule::Tolerance});
    const auto gap = matrix_pencil(h, PencilConfig{8, 1e-8, PencilRankRule::LargestGap});
    EXPECT_EQ(tol.phase_steps.size(), 3u);
    EXPECT_EQ(gap.phase_steps.size(), 3u);
}

TEST(MatrixPencil, DefaultPencilParameterIsHalfLength)
{
    const auto h = exponentials(10, {{cd{1.0}, 0.3}});
    const auto a = matrix_pencil(h, 0);
    const auto b = matrix_pencil(h, 5);
    EXPECT_EQ(a.phase_steps, b.phase_steps);
}

TEST(MatrixPencil, RejectsBadPencilParameter)
{
    const CVector h(8, cd{1.0});
    for (std::size_t p : {8u, 9u}) {
        try {
            matrix_pencil(h, p);
            FAIL() << "expected InvalidInputs";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidInputs);
        }
    }
    EXPECT_THROW(matrix_pencil(CVector(8), 4), Error);
}

TEST(PhaseStepToAngle, Examples)
{
    EXPECT_DOUBLE_EQ(phase_step_to_angle(0.0), 90.0);
    EXPECT_NEAR(phase_step_to_angle(kPi / 2.0), 60.0, 1e-12);
    EXPECT_NEAR(phase_step_to_angle(-kPi / 2.0), 120.0, 1e-12);
    EXPECT_NEAR(phase_step_to_angle(kPi), 0.0, 1e-12);
    EXPECT_NEAR(phase_step_to_angle(-kPi), 180.0, 1e-12);
}
