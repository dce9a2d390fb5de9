// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/evaluation.hpp"
#include "jcs/scenario.hpp"
#include "jcs/theory.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace jcs {

/// Inclusive range start, start + step, ... up to stop (within step/1000).
std::vector<double> stepped_range(double start, double stop, double step);

struct SeparationGrid {
    std::vector<double> delta_l_m;
    std::vector<double> delta_theta_deg;

    /// 0..0.5 m in 1.25 cm steps x 0..10 deg in 0.25 deg steps.
    static SeparationGrid close();
    /// 0..5 m in 1 m steps x 0..10 deg in 1 deg steps.
    static SeparationGrid spread();
};

struct RmseSettings {
    std::vector<double> gamma0_db{0.0, 3.0, 6.0, 9.0, 12.0, 15.0};
    std::vector<Method> methods{{Method::Kind::Proposed, 0},     {Method::Kind::Music2dFull, 0},
                                {Method::Kind::Music2dEquiv, 2}, {Method::Kind::Music2dEquiv, 4},
                                {Method::Kind::Music2dEquiv, 8}};
    std::size_t trials = 1000;
    double range_min_m = 5.0;
    double range_max_m = 15.0;
    double theta_min_deg = 20.0;
    double theta_max_deg = 160.0;
    /// 2D-MUSIC search grid for this experiment; peaks are refined
    /// off-grid, so a coarser grid than the default only costs robustness.
    Grid music2d_tau{0.0, 20.0 / kSpeedOfLight, 401};
    Grid music2d_theta{0.0, 180.0, 361};
};

struct LeakageSettings {
    SeparationGrid close = SeparationGrid::close();
    SeparationGrid spread = SeparationGrid::spread();
    std::size_t trials = 100;
};

struct PatternSettings {
    std::size_t n_antennas = 16;
    std::vector<double> paths_deg{90.0};
    std::vector<double> gains{1.0};
    double xi = 0.0; ///< 0 disables the extra lobe
    double varphi_deg = 30.0;
    double grid_step_deg = 0.25;
};

struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::size_t threads = 0; ///< 0 = hardware concurrency
    std::size_t trials = 100; ///< per resolution cell
    Method method;
    /// Estimators are told the true number of paths (fixed source count).
    bool known_sources = true;

    SystemParams system;
    TwoPathGeometry geometry;
    AssociationParams association;
    MethodConfig methods;
    SeparationGrid resolve_grid = SeparationGrid::close();
    RmseSettings rmse;
    LeakageSettings leakage;
    TheoryParams theory;
    PatternSettings pattern;
};

struct CellStats {
    double delta_l_m = 0.0;
    double delta_theta_deg = 0.0;
    std::size_t trials = 0;
    std::size_t resolved = 0;
    std::size_t trials_with_leak = 0;
    std::size_t leaks = 0;
};

struct ResolutionGrid {
    std::vector<double> delta_l_values;
    std::vector<double> delta_theta_values;
    std::size_t trials_per_cell = 0;
    /// prob[l * n_theta + t]
    std::vector<double> prob;
    std::vector<CellStats> cells;

    double at(std::size_t l, std::size_t t) const { return prob.at(l * delta_theta_values.size() + t); }
};

struct RmseRow {
    double gamma0_db = 0.0;
    std::string method;
    double range_rmse_mm = 0.0;
    double angle_rmse_deg = 0.0;
    std::size_t matched = 0;
    std::size_t trials = 0;
};

struct LeakageRow {
    std::string grid;
    double prob_any_leak = 0.0;
    double avg_leaks = 0.0;
    std::size_t trials = 0;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Seed of trial t in a cell: independent of thread count and cell order.
std::uint64_t trial_seed(std::uint64_t master, std::string_view experiment, std::uint64_t cell, std::uint64_t t);

/// One two-path trial of cfg.method at the configured SNR.
TrialResult run_two_path_trial(const ExperimentConfig& cfg, double delta_l_m, double delta_theta_deg,
                               std::uint64_t seed);

/// Per-cell statistics over a separation grid. `grid_name` is part of every
/// trial seed, so a grid evaluated under the same name reproduces exactly.
std::vector<CellStats> run_separation_grid(const ExperimentConfig& cfg, const SeparationGrid& grid,
                                           std::string_view grid_name, std::size_t trials);

ResolutionGrid resolution_experiment(const ExperimentConfig& cfg);
std::vector<RmseRow> rmse_experiment(const ExperimentConfig& cfg);
std::vector<LeakageRow> leakage_experiment(const ExperimentConfig& cfg);

} // namespace jcs
