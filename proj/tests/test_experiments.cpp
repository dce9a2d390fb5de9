// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <sstream>

using namespace jcs;

namespace {

ExperimentConfig tiny()
{
    ExperimentConfig cfg;
    cfg.seed = 11;
    cfg.trials = 6;
    cfg.resolve_grid = {{0.0, 0.5}, {0.0, 10.0}};
    cfg.rmse.trials = 4;
    cfg.rmse.gamma0_db = {10.0};
    cfg.rmse.methods = {Method{}};
    cfg.leakage.close = {{0.25}, {5.0}};
    cfg.leakage.spread = {{2.0}, {4.0}};
    cfg.leakage.trials = 4;
    return cfg;
}

std::string resolution_csv(const ExperimentConfig& cfg)
{
    std::ostringstream s;
    write_resolution_csv(s, resolution_experiment(cfg));
    return s.str();
}

} // namespace

TEST(SteppedRange, InclusiveEndpointDespiteRounding)
{
    const auto a = stepped_range(0.0, 0.5, 0.0125);
    EXPECT_EQ(a.size(), 41u);
    EXPECT_NEAR(a.back(), 0.5, 1e-12);
    EXPECT_EQ(stepped_range(0.0, 10.0, 0.25).size(), 41u);
    EXPECT_EQ(stepped_range(1.0, 1.0, 1.0), std::vector<double>{1.0});
    EXPECT_THROW(stepped_range(0.0, 1.0, 0.0), Error);
    EXPECT_THROW(stepped_range(1.0, 0.0, 0.1), Error);
}

TEST(SeparationGrid, Shapes)
{
    const auto c = SeparationGrid::close();
    EXPECT_EQ(c.delta_l_m.size(), 41u);
    EXPECT_EQ(c.delta_theta_deg.size(), 41u);
    const auto s = SeparationGrid::spread();
    EXPECT_EQ(s.delta_l_m.size(), 6u);
    EXPECT_EQ(s.delta_theta_deg.size(), 11u);
    EXPECT_DOUBLE_EQ(s.delta_l_m.back(), 5.0);
}

TEST(TrialSeed, DistinctAcrossCoordinates)
{
    const auto a = trial_seed(1, "close", 0, 0);
    EXPECT_EQ(a, trial_seed(1, "close", 0, 0));
    EXPECT_NE(a, trial_seed(2, "close", 0, 0));
    EXPECT_NE(a, trial_seed(1, "spread", 0, 0));
    EXPECT_NE(a, trial_seed(1, "close", 1, 0));
    EXPECT_NE(a, trial_seed(1, "close", 0, 1));
}

TEST(ParallelFor, VisitsEveryIndexOnce)
{
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits)
        EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7)
                         throw Error(ErrorCode::InvalidInputs, "boom");
                 }),
                 Error);
}

TEST(ResolutionExperiment, ReproducibleAcrossThreadCounts)
{
    auto cfg = tiny();
    cfg.threads = 1;
    const std::string one = resolution_csv(cfg);
    cfg.threads = 3;
    EXPECT_EQ(resolution_csv(cfg), one);
    // A different master seed must change the underlying draws.
    const auto a = run_two_path_trial(cfg, 0.25, 5.0, trial_seed(11, "close", 0, 0));
    const auto b = run_two_path_trial(cfg, 0.25, 5.0, trial_seed(12, "close", 0, 0));
    ASSERT_FALSE(a.detections.empty());
    ASSERT_FALSE(b.detections.empty());
    EXPECT_NE(a.detections[0].tau, b.detections[0].tau);
}

TEST(ResolutionExperiment, IdenticalComponentsNeverResolve)
{
    const auto g = resolution_experiment(tiny());
    ASSERT_EQ(g.prob.size(), 4u);
    EXPECT_DOUBLE_EQ(g.at(0, 0), 0.0);
    for (double p : g.prob) {
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
    }
    EXPECT_EQ(g.trials_per_cell, 6u);
}

TEST(ResolutionCsv, HeaderAndRowOrder)
{
    ResolutionGrid g;
    g.delta_l_values = {0.0, 0.5};
    g.delta_theta_values = {0.0, 10.0};
    g.prob = {0.0, 0.25, 0.5, 1.0};
    std::ostringstream s;
    write_resolution_csv(s, g);
    EXPECT_EQ(s.str(), "delta_l_m,delta_theta_deg,prob\n0,0,0\n0,10,0.25\n0.5,0,0.5\n0.5,10,1\n");
}

TEST(OtherCsv, Headers)
{
    std::ostringstream r, t, l, p;
    const std::vector<RmseRow> rr{{15.0, "proposed", 0.6446, 0.0349, 10, 10}};
    write_rmse_csv(r, rr);
    EXPECT_EQ(r.str(), "gamma0_db,method,range_rmse_mm,angle_rmse_deg\n15,proposed,0.6446,0.0349\n");
    const std::vector<TheoryRow> tr{{"equivalent", 4, 1.5, 27.25}};
    write_theory_csv(t, tr);
    EXPECT_EQ(t.str(), "arch,n_prime,delta_t_ns,delta_omega_mrad\nequivalent,4,1.5,27.25\n");
    const std::vector<LeakageRow> lr{{"close", 0.25, 0.41, 100}};
    write_leakage_csv(l, lr);
    EXPECT_EQ(l.str(), "grid,prob_any_leak,avg_leaks\nclose,0.25,0.41\n");
    const std::vector<double> grid{90.0};
    write_pattern_csv(p, array_factor(BeamWeights{CVector(1, cd{2.0}), 0}, grid));
    EXPECT_EQ(p.str(), "phi_deg,af_real,af_imag,gain_db\n90,2,0,6.020599913\n");
}

TEST(FormatNumber, NonFinite)
{
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(RmseExperiment, RowsAndDeterminism)
{
    auto cfg = tiny();
    cfg.rmse.methods = {Method{}, Method{Method::Kind::Music2dEquiv, 8}};
    cfg.rmse.music2d_tau = {0.0, 20.0 / kSpeedOfLight, 201};
    cfg.rmse.music2d_theta = {0.0, 180.0, 181};
    const auto a = rmse_experiment(cfg);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].method, "proposed");
    EXPECT_EQ(a[1].method, "music2d_equiv(8)");
    EXPECT_EQ(a[0].trials, 4u);
    EXPECT_GT(a[0].matched, 0u);
    EXPECT_GT(a[0].range_rmse_mm, 0.0);
    const auto b = rmse_experiment(cfg);
    EXPECT_EQ(a[0].range_rmse_mm, b[0].range_rmse_mm);
    EXPECT_EQ(a[1].angle_rmse_deg, b[1].angle_rmse_deg);
}

TEST(LeakageExperiment, TwoRowsInRange)
{
    const auto rows = leakage_experiment(tiny());
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].grid, "close");
    EXPECT_EQ(rows[1].grid, "spread");
    for (const auto& r : rows) {
        EXPECT_GE(r.prob_any_leak, 0.0);
        EXPECT_LE(r.prob_any_leak, 1.0);
        EXPECT_GE(r.avg_leaks, r.prob_any_leak);
        EXPECT_EQ(r.trials, 4u);
    }
}

TEST(Method, ParseAndName)
{
    for (const char* s : {"proposed", "music2d_full", "music2d_equiv(4)"})
        EXPECT_EQ(Method::parse(s).name(), s);
    for (const char* s : {"", "music2d_equiv()", "music2d_equiv(0)", "music2d_equiv(x)", "mimo"})
        EXPECT_THROW(Method::parse(s), Error) << s;
}

TEST(Scenario, TwoPathGeometry)
{
    SystemParams sys;
    const TwoPathGeometry geo;
    const auto ch = two_path_channel(sys, geo, 0.5, 10.0);
    ASSERT_EQ(ch.paths.size(), 2u);
    EXPECT_NEAR(ch.paths[0].tau * kSpeedOfLight, 10.0, 1e-12);
    EXPECT_NEAR(ch.paths[1].tau * kSpeedOfLight, 10.5, 1e-12);
    EXPECT_NEAR(rad_to_deg(ch.paths[0].theta), 30.0, 1e-12);
    EXPECT_NEAR(rad_to_deg(ch.paths[1].theta), 40.0, 1e-12);
    EXPECT_DOUBLE_EQ(ch.subcarrier_spacing, 400e6 / 128.0);
}
