// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/experiments.hpp"

#include "jcs/error.hpp"
#include "jcs/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace jcs {

std::vector<double> stepped_range(double start, double stop, double step)
{
    if (!(step > 0.0) || stop < start)
        throw Error(ErrorCode::ConfigError, "range needs step > 0 and stop >= start");
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
        const double v = start + static_cast<double>(k) * step;
        if (v > stop + step * 1e-3)
            break;
        out.push_back(v);
    }
    return out;
}

SeparationGrid SeparationGrid::close()
{
    return {stepped_range(0.0, 0.5, 0.0125), stepped_range(0.0, 10.0, 0.25)};
}

SeparationGrid SeparationGrid::spread()
{
    return {stepped_range(0.0, 5.0, 1.0), stepped_range(0.0, 10.0, 1.0)};
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::uint64_t trial_seed(std::uint64_t master, std::string_view experiment, std::uint64_t cell, std::uint64_t t)
{
    return derive_seed(master, {hash_name(experiment), cell, t});
}

namespace {

MethodConfig methods_for(const ExperimentConfig& cfg, std::size_t n_paths)
{
    MethodConfig m = cfg.methods;
    if (cfg.known_sources)
        m.pipeline.music.n_sources = n_paths;
    return m;
}

} // namespace

TrialResult run_two_path_trial(const ExperimentConfig& cfg, double delta_l_m, double delta_theta_deg,
                               std::uint64_t seed)
{
    const MultipathChannel ch = two_path_channel(cfg.system, cfg.geometry, delta_l_m, delta_theta_deg);
    const MethodConfig mc = methods_for(cfg, ch.paths.size());
    auto dets = run_method(cfg.method, ch, cfg.system, mc, db_to_linear(cfg.system.snr_db), seed);
    return evaluate_trial(std::move(dets), ch.paths, cfg.association);
}

std::vector<CellStats> run_separation_grid(const ExperimentConfig& cfg, const SeparationGrid& grid,
                                           std::string_view grid_name, std::size_t trials)
{
    const std::size_t nl = grid.delta_l_m.size();
    const std::size_t na = grid.delta_theta_deg.size();
    struct Outcome {
        bool resolved = false;
        std::size_t leaks = 0;
    };
    std::vector<Outcome> outcomes(nl * na * trials);
    parallel_for(outcomes.size(), cfg.threads, [&](std::size_t idx) {
        const std::size_t cell = idx / trials;
        const std::size_t t = idx % trials;
        const double dl = grid.delta_l_m[cell / na];
        const double da = grid.delta_theta_deg[cell % na];
        const TrialResult r = run_two_path_trial(cfg, dl, da, trial_seed(cfg.seed, grid_name, cell, t));
        outcomes[idx] = {r.resolved, r.leak_count};
    });

    std::vector<CellStats> cells(nl * na);
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
        auto& c = cells[cell];
        c.delta_l_m = grid.delta_l_m[cell / na];
        c.delta_theta_deg = grid.delta_theta_deg[cell % na];
        c.trials = trials;
        for (std::size_t t = 0; t < trials; ++t) {
            const auto& o = outcomes[cell * trials + t];
            c.resolved += o.resolved ? 1 : 0;
            c.trials_with_leak += o.leaks > 0 ? 1 : 0;
            c.leaks += o.leaks;
        }
    }
    return cells;
}

ResolutionGrid resolution_experiment(const ExperimentConfig& cfg)
{
    if (cfg.trials == 0)
        throw Error(ErrorCode::ConfigError, "trials must be positive");
    ResolutionGrid g;
    g.delta_l_values = cfg.resolve_grid.delta_l_m;
    g.delta_theta_values = cfg.resolve_grid.delta_theta_deg;
    g.trials_per_cell = cfg.trials;
    g.cells = run_separation_grid(cfg, cfg.resolve_grid, "close", cfg.trials);
    g.prob.reserve(g.cells.size());
    for (const auto& c : g.cells)
        g.prob.push_back(static_cast<double>(c.resolved) / static_cast<double>(c.trials));
    return g;
}

std::vector<LeakageRow> leakage_experiment(const ExperimentConfig& cfg)
{
    const std::size_t trials = cfg.leakage.trials;
    if (trials == 0)
        throw Error(ErrorCode::ConfigError, "trials must be positive");
    std::vector<LeakageRow> rows;
    for (const auto& [name, grid] : {std::pair<std::string, const SeparationGrid*>{"close", &cfg.leakage.close},
                                     std::pair<std::string, const SeparationGrid*>{"spread", &cfg.leakage.spread}}) {
        const auto cells = run_separation_grid(cfg, *grid, name, trials);
        std::size_t total = 0, any = 0, leaks = 0;
        for (const auto& c : cells) {
            total += c.trials;
            any += c.trials_with_leak;
            leaks += c.leaks;
        }
        rows.push_back({name, static_cast<double>(any) / static_cast<double>(total),
                        static_cast<double>(leaks) / static_cast<double>(total), total});
    }
    return rows;
}

std::vector<RmseRow> rmse_experiment(const ExperimentConfig& cfg)
{
    const auto& rs = cfg.rmse;
    if (rs.trials == 0 || rs.methods.empty() || rs.gamma0_db.empty())
        throw Error(ErrorCode::ConfigError, "rmse needs trials, methods and SNR points");

    std::vector<PathComponent> truths(rs.trials);
    for (std::size_t t = 0; t < rs.trials; ++t) {
        Rng rng(trial_seed(cfg.seed, "rmse-geometry", 0, t));
        const double range = rng.uniform(rs.range_min_m, rs.range_max_m);
        const double theta = rng.uniform(rs.theta_min_deg, rs.theta_max_deg);
        truths[t] = {range / kSpeedOfLight, deg_to_rad(theta), 1.0};
    }

    MethodConfig mc = methods_for(cfg, 1);
    mc.music2d.tau_grid = rs.music2d_tau;
    mc.music2d.theta_grid = rs.music2d_theta;

    const std::size_t ng = rs.gamma0_db.size();
    const std::size_t nm = rs.methods.size();
    struct Outcome {
        double sq_tau = 0.0;
        double sq_theta = 0.0;
        std::size_t matched = 0;
    };
    std::vector<Outcome> outcomes(ng * nm * rs.trials);
    parallel_for(outcomes.size(), cfg.threads, [&](std::size_t idx) {
        const std::size_t t = idx % rs.trials;
        const std::size_t m = (idx / rs.trials) % nm;
        const std::size_t g = idx / (rs.trials * nm);
        const MultipathChannel ch = make_channel(cfg.system, {truths[t]});
        auto dets =
            run_method(rs.methods[m], ch, cfg.system, mc, db_to_linear(rs.gamma0_db[g]), trial_seed(cfg.seed, "rmse", 0, t));
        const TrialResult r = evaluate_trial(std::move(dets), ch.paths, cfg.association);
        outcomes[idx] = {r.sq_err_tau, r.sq_err_theta, r.n_matched};
    });

    std::vector<RmseRow> rows;
    for (std::size_t g = 0; g < ng; ++g)
        for (std::size_t m = 0; m < nm; ++m) {
            double sq_tau = 0.0, sq_theta = 0.0;
            std::size_t matched = 0;
            for (std::size_t t = 0; t < rs.trials; ++t) {
                const auto& o = outcomes[(g * nm + m) * rs.trials + t];
                sq_tau += o.sq_tau;
                sq_theta += o.sq_theta;
                matched += o.matched;
            }
            const double denom = matched > 0 ? static_cast<double>(matched) : std::nan("");
            rows.push_back({rs.gamma0_db[g], rs.methods[m].name(), std::sqrt(sq_tau / denom) * kSpeedOfLight * 1e3,
                            std::sqrt(sq_theta / denom), matched, rs.trials});
        }
    return rows;
}

} // namespace jcs
