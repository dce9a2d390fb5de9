// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator
//
// jcs-sim: runs the Monte Carlo experiments and writes CSV plus a JSON
// run manifest next to it.

#include "jcs/jcs.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> threads;
    std::vector<std::string> methods;
    std::string out_dir = ".";
};

jcs::ExperimentConfig resolve_config(const Options& o, const std::string& command)
{
    jcs::ExperimentConfig cfg = o.config_path.empty() ? jcs::ExperimentConfig{} : jcs::load_config(o.config_path);
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.threads)
        cfg.threads = *o.threads;
    if (o.trials) {
        // --trials means "trials per Monte Carlo unit" of whichever command runs.
        if (command == "rmse")
            cfg.rmse.trials = *o.trials;
        else if (command == "leakage")
            cfg.leakage.trials = *o.trials;
        else
            cfg.trials = *o.trials;
    }
    if (!o.methods.empty()) {
        std::vector<jcs::Method> parsed;
        for (const auto& m : o.methods)
            parsed.push_back(jcs::Method::parse(m));
        cfg.method = parsed.front();
        cfg.rmse.methods = parsed;
    }
    return cfg;
}

class Run {
public:
    Run(std::string command, const Options& o)
        : command_(std::move(command)), out_dir_(o.out_dir), cfg_(resolve_config(o, command_)),
          start_(std::chrono::steady_clock::now())
    {
        fs::create_directories(out_dir_);
    }

    const jcs::ExperimentConfig& cfg() const { return cfg_; }

    std::ofstream open_csv()
    {
        csv_path_ = out_dir_ / (command_ + ".csv");
        std::ofstream out(csv_path_, std::ios::binary);
        if (!out)
            throw jcs::Error(jcs::ErrorCode::ConfigError, "cannot write " + csv_path_.string());
        return out;
    }

    void finish()
    {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json manifest = {
            {"command", command_},
            {"version", jcs::version()},
            {"seed", cfg_.seed},
            {"wall_time_s", wall},
            {"config", jcs::config_to_json(cfg_)},
        };
        if (!csv_path_.empty())
            manifest["output"] = csv_path_.filename().string();
        const fs::path path = out_dir_ / (command_ + ".manifest.json");
        std::ofstream(path) << manifest.dump(2) << '\n';
        if (!csv_path_.empty())
            std::cerr << "wrote " << csv_path_.string() << " (" << wall << " s)\n";
    }

private:
    std::string command_;
    fs::path out_dir_;
    jcs::ExperimentConfig cfg_;
    std::chrono::steady_clock::time_point start_;
    fs::path csv_path_;
};

void cmd_resolve(Run& run)
{
    const auto grid = jcs::resolution_experiment(run.cfg());
    auto out = run.open_csv();
    jcs::write_resolution_csv(out, grid);
}

void cmd_rmse(Run& run)
{
    const auto rows = jcs::rmse_experiment(run.cfg());
    auto out = run.open_csv();
    jcs::write_rmse_csv(out, rows);
}

void cmd_leakage(Run& run)
{
    const auto rows = jcs::leakage_experiment(run.cfg());
    auto out = run.open_csv();
    jcs::write_leakage_csv(out, rows);
}

void cmd_theory(Run& run)
{
    const auto rows = jcs::theory_table(run.cfg().theory);
    auto out = run.open_csv();
    jcs::write_theory_csv(out, rows);
}

void cmd_pattern(Run& run)
{
    const auto& p = run.cfg().pattern;
    if (p.paths_deg.empty() || p.paths_deg.size() != p.gains.size())
        throw jcs::Error(jcs::ErrorCode::ConfigError, "pattern.paths_deg and pattern.gains must be non-empty and equal length");
    std::vector<jcs::PathComponent> paths;
    std::vector<jcs::cd> alphas;
    for (std::size_t k = 0; k < p.paths_deg.size(); ++k) {
        paths.push_back({0.0, jcs::deg_to_rad(p.paths_deg[k]), 1.0});
        alphas.emplace_back(p.gains[k], 0.0);
    }
    jcs::BeamWeights beam = jcs::mrc_beam(paths, alphas, p.n_antennas);
    if (p.xi > 0.0) {
        beam = jcs::perturb_beam(beam, p.xi, p.varphi_deg).beta_prime;
        std::cerr << "perturbation SNR penalty " << jcs::snr_penalty_db(p.xi) << " dB\n";
    }
    const auto grid = jcs::stepped_range(0.0, 180.0, p.grid_step_deg);
    const auto pattern = jcs::array_factor(beam, grid);
    auto out = run.open_csv();
    jcs::write_pattern_csv(out, pattern);
}

void cmd_demo(Run& run, double delta_l, double delta_theta)
{
    const auto& cfg = run.cfg();
    const auto ch = jcs::two_path_channel(cfg.system, cfg.geometry, delta_l, delta_theta);
    const auto r = jcs::run_two_path_trial(cfg, delta_l, delta_theta, jcs::trial_seed(cfg.seed, "demo", 0, 0));

    std::printf("method %s, SNR %g dB, seed %llu\n", cfg.method.name().c_str(), cfg.system.snr_db,
                static_cast<unsigned long long>(cfg.seed));
    std::printf("truth:\n");
    for (const auto& p : ch.paths)
        std::printf("  range %.4f m  angle %.3f deg\n", p.tau * jcs::kSpeedOfLight, jcs::rad_to_deg(p.theta));
    std::printf("detections:\n");
    for (std::size_t k = 0; k < r.detections.size(); ++k) {
        const auto& d = r.detections[k];
        std::string tag = "spurious";
        if (r.assigned[k])
            tag = "path " + std::to_string(*r.assigned[k]);
        else if (d.leaked.value_or(false))
            tag = "leak";
        std::printf("  range %.4f m  angle %.3f deg  |a| %.4g  %s\n", d.tau * jcs::kSpeedOfLight, d.theta_deg,
                    std::abs(d.amplitude), tag.c_str());
    }
    std::printf("resolved %s, spurious %zu, leaks %zu\n", r.resolved ? "yes" : "no", r.spurious_count, r.leak_count);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hybrid analog/digital JCS sensing simulator"};
    app.set_version_flag("--version", std::string(jcs::version()));
    app.require_subcommand(1);
    app.fallthrough(); // subcommands inherit this, so global flags may follow them

    Options opts;
    app.add_option("--config", opts.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--seed", opts.seed, "Master seed");
    app.add_option("--trials", opts.trials, "Trials per cell / per SNR point");
    app.add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
    app.add_option("--method", opts.methods,
                   "proposed, music2d_full or music2d_equiv(N'); repeat for several rmse methods");
    app.add_option("--out", opts.out_dir, "Output directory for CSV and manifest");

    double demo_dl = 0.5, demo_dt = 10.0;
    app.add_subcommand("resolve", "Resolution probability over the separation grid");
    app.add_subcommand("rmse", "Range and angle RMSE versus SNR");
    app.add_subcommand("leakage", "Leakage statistics on the close and spread grids");
    app.add_subcommand("theory", "Closed-form resolution limits");
    app.add_subcommand("pattern", "Array factor of an MRC beam");
    auto* demo = app.add_subcommand("demo", "One verbose two-path trial");
    demo->add_option("--delta-l", demo_dl, "Range separation, m");
    demo->add_option("--delta-theta", demo_dt, "Angle separation, degrees");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        Run run(command, opts);
        if (command == "resolve")
            cmd_resolve(run);
        else if (command == "rmse")
            cmd_rmse(run);
        else if (command == "leakage")
            cmd_leakage(run);
        else if (command == "theory")
            cmd_theory(run);
        else if (command == "pattern")
            cmd_pattern(run);
        else
            cmd_demo(run, demo_dl, demo_dt);
        run.finish();
    } catch (const jcs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
