// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/config.hpp"

#include "jcs/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <utility>

namespace jcs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

// Meter-valued keys are written with 12 significant digits so that a
// written config converts back to exactly the same delays.
double round_sig(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

template <class E>
struct EnumName {
    E value;
    const char* name;
};

constexpr EnumName<AnalogNoise> kAnalogNoise[] = {{AnalogNoise::PerAntenna, "per_antenna"},
                                                  {AnalogNoise::AtCombinerOutput, "at_combiner_output"}};
constexpr EnumName<SubspaceRoute> kRoute[] = {{SubspaceRoute::Auto, "auto"},
                                              {SubspaceRoute::FullCovariance, "full_covariance"},
                                              {SubspaceRoute::SnapshotGram, "snapshot_gram"}};
constexpr EnumName<PencilRankRule> kRankRule[] = {{PencilRankRule::Tolerance, "tolerance"},
                                                  {PencilRankRule::LargestGap, "largest_gap"}};
constexpr EnumName<EquivalentSnrScaling> kScaling[] = {{EquivalentSnrScaling::ArrayShare, "array_share"},
                                                       {EquivalentSnrScaling::BandShare, "band_share"},
                                                       {EquivalentSnrScaling::InverseBandShare, "inverse_band_share"}};

template <class E, std::size_t N>
const char* enum_to_string(const EnumName<E> (&table)[N], E v)
{
    for (const auto& e : table)
        if (e.value == v)
            return e.name;
    return "unknown";
}

template <class E, std::size_t N>
E enum_from_string(const EnumName<E> (&table)[N], const std::string& s, const std::string& path)
{
    for (const auto& e : table)
        if (s == e.name)
            return e.value;
    std::string options;
    for (const auto& e : table)
        options += std::string(options.empty() ? "" : ", ") + e.name;
    fail(path + ": '" + s + "' is not one of " + options);
}

// Reads keys from one JSON object and rejects any it was not asked about.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            fail((path_.empty() ? "config" : path_) + ": expected an object");
    }

    Section(const Section&) = delete;
    Section& operator=(const Section&) = delete;

    void finish() const
    {
        for (const auto& item : j_.items())
            if (!seen_.count(item.key()))
                fail("unknown key '" + where(item.key()) + "'");
    }

    bool has(const std::string& key)
    {
        seen_.insert(key);
        return j_.contains(key);
    }

    template <class T>
    void get(const std::string& key, T& out)
    {
        if (!has(key))
            return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception&) {
            fail(where(key) + ": wrong value type");
        }
    }

    template <class E, std::size_t N>
    void get_enum(const std::string& key, const EnumName<E> (&table)[N], E& out)
    {
        std::string s;
        if (!has(key))
            return;
        get(key, s);
        out = enum_from_string(table, s, where(key));
    }

    template <class Fn>
    void section(const std::string& key, Fn&& fn)
    {
        if (!has(key))
            return;
        Section child(j_.at(key), where(key));
        fn(child);
        child.finish();
    }

    const json& raw(const std::string& key) const { return j_.at(key); }
    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_positive(Section& s, const std::string& key, std::size_t& out)
{
    if (!s.has(key))
        return;
    const json& v = s.raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        fail(s.where(key) + ": expected a non-negative integer");
    out = v.get<std::size_t>();
}

std::vector<double> read_values(Section& s, const std::string& key, const std::vector<double>& current)
{
    if (!s.has(key))
        return current;
    const json& v = s.raw(key);
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number())
                fail(s.where(key) + ": expected numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }
    double start = 0.0, stop = 0.0, step = 0.0;
    Section r(v, s.where(key));
    r.get("start", start);
    r.get("stop", stop);
    r.get("step", step);
    r.finish();
    return stepped_range(start, stop, step);
}

void read_separation(Section& s, SeparationGrid& g)
{
    g.delta_l_m = read_values(s, "delta_l_m", g.delta_l_m);
    g.delta_theta_deg = read_values(s, "delta_theta_deg", g.delta_theta_deg);
}

void read_tau_grid(Section& s, const std::string& prefix, Grid& g)
{
    double lo = g.start * kSpeedOfLight, hi = g.stop * kSpeedOfLight;
    if (s.has(prefix + "_min_m")) {
        s.get(prefix + "_min_m", lo);
        g.start = lo / kSpeedOfLight;
    }
    if (s.has(prefix + "_max_m")) {
        s.get(prefix + "_max_m", hi);
        g.stop = hi / kSpeedOfLight;
    }
    read_positive(s, prefix + "_points", g.points);
}

void read_theta_grid(Section& s, Grid& g)
{
    s.get("theta_min_deg", g.start);
    s.get("theta_max_deg", g.stop);
    read_positive(s, "theta_points", g.points);
}

void read_music(Section& s, MusicConfig& m, bool& known_sources)
{
    if (s.has("n_sources")) {
        const json& v = s.raw("n_sources");
        if (v.is_string() && v.get<std::string>() == "known") {
            known_sources = true;
        } else if (v.is_string() && v.get<std::string>() == "auto") {
            known_sources = false;
            m.n_sources.reset();
        } else if (v.is_number_integer() && v.get<long long>() > 0) {
            known_sources = false;
            m.n_sources = v.get<std::size_t>();
        } else {
            fail(s.where("n_sources") + ": expected \"known\", \"auto\" or a positive integer");
        }
    }
    read_tau_grid(s, "tau", m.tau_grid);
    s.get("peak_min_prominence_db", m.peak_min_prominence);
    s.get("min_eigen_gap", m.min_eigen_gap);
    s.get("refine", m.refine);
    s.get_enum("route", kRoute, m.route);
}

json values_json(const std::vector<double>& v) { return json(v); }

json tau_grid_json(const std::string& prefix, const Grid& g)
{
    return {{prefix + "_min_m", round_sig(g.start * kSpeedOfLight)},
            {prefix + "_max_m", round_sig(g.stop * kSpeedOfLight)},
            {prefix + "_points", g.points}};
}

} // namespace

ExperimentConfig config_from_json(const json& j, ExperimentConfig c)
{
    Section root(j, "");
    root.get("seed", c.seed);
    read_positive(root, "threads", c.threads);
    read_positive(root, "trials", c.trials);
    if (root.has("method")) {
        std::string m;
        root.get("method", m);
        c.method = Method::parse(m);
    }

    root.section("system", [&](Section& s) {
        read_positive(s, "n_antennas", c.system.n_antennas);
        read_positive(s, "n_subcarriers", c.system.n_subcarriers);
        s.get("bandwidth_hz", c.system.bandwidth);
        read_positive(s, "n_frames", c.system.n_frames);
        read_positive(s, "m_digital", c.system.m_digital);
        s.get("snr_db", c.system.snr_db);
        s.get_enum("analog_noise", kAnalogNoise, c.system.analog_noise);
    });
    root.section("geometry", [&](Section& s) {
        s.get("base_range_m", c.geometry.base_range_m);
        s.get("base_theta_deg", c.geometry.base_theta_deg);
        s.get("second_theta_deg", c.geometry.second_theta_deg);
    });
    root.section("association", [&](Section& s) {
        double m = c.association.sigma_tau * kSpeedOfLight;
        if (s.has("sigma_tau_m")) {
            s.get("sigma_tau_m", m);
            c.association.sigma_tau = m / kSpeedOfLight;
        }
        s.get("sigma_theta_deg", c.association.sigma_theta);
    });
    root.section("pipeline", [&](Section& s) {
        auto& p = c.methods.pipeline;
        s.get("rho", p.rho);
        read_positive(s, "pencil_p", p.pencil.pencil_p);
        s.get("rank_tol", p.pencil.rank_tol);
        s.get_enum("rank_rule", kRankRule, p.pencil.rank_rule);
        s.get("merge_deg", p.merge_deg);
        s.section("music", [&](Section& m) { read_music(m, p.music, c.known_sources); });
    });
    root.section("music2d", [&](Section& s) {
        auto& m = c.methods.music2d;
        read_tau_grid(s, "tau", m.tau_grid);
        read_theta_grid(s, m.theta_grid);
        s.get("forward_backward", m.forward_backward);
        s.get("refine", m.refine);
        s.get_enum("route", kRoute, m.route);
    });
    root.get_enum("equivalent_snr", kScaling, c.methods.equivalent_snr);
    root.section("resolve", [&](Section& s) { read_separation(s, c.resolve_grid); });
    root.section("rmse", [&](Section& s) {
        auto& r = c.rmse;
        r.gamma0_db = read_values(s, "gamma0_db", r.gamma0_db);
        if (s.has("methods")) {
            std::vector<std::string> names;
            s.get("methods", names);
            r.methods.clear();
            for (const auto& n : names)
                r.methods.push_back(Method::parse(n));
        }
        read_positive(s, "trials", r.trials);
        s.get("range_min_m", r.range_min_m);
        s.get("range_max_m", r.range_max_m);
        s.get("theta_min_deg", r.theta_min_deg);
        s.get("theta_max_deg", r.theta_max_deg);
        s.section("music2d", [&](Section& m) {
            read_tau_grid(m, "tau", r.music2d_tau);
            read_theta_grid(m, r.music2d_theta);
        });
    });
    root.section("leakage", [&](Section& s) {
        s.section("close", [&](Section& g) { read_separation(g, c.leakage.close); });
        s.section("spread", [&](Section& g) { read_separation(g, c.leakage.spread); });
        read_positive(s, "trials", c.leakage.trials);
    });
    root.section("theory", [&](Section& s) {
        auto& t = c.theory;
        s.get("s", t.s);
        s.get("delta_f_hz", t.delta_f);
        s.get("f", t.f);
        read_positive(s, "n", t.n);
        s.get("gamma0_db", t.gamma0_db);
        read_positive(s, "n_prime_min", t.n_prime_min);
        read_positive(s, "n_prime_max", t.n_prime_max);
        s.get_enum("scaling", kScaling, t.scaling);
    });
    root.section("pattern", [&](Section& s) {
        auto& p = c.pattern;
        read_positive(s, "n_antennas", p.n_antennas);
        s.get("paths_deg", p.paths_deg);
        s.get("gains", p.gains);
        s.get("xi", p.xi);
        s.get("varphi_deg", p.varphi_deg);
        s.get("grid_step_deg", p.grid_step_deg);
    });

    root.finish();

    c.system.validate();
    c.association.validate();
    c.methods.pipeline.validate();
    if (c.pattern.paths_deg.size() != c.pattern.gains.size() || c.pattern.paths_deg.empty())
        fail("pattern.paths_deg and pattern.gains must be non-empty and of equal length");
    return c;
}

json config_to_json(const ExperimentConfig& c)
{
    json music = tau_grid_json("tau", c.methods.pipeline.music.tau_grid);
    if (c.known_sources)
        music["n_sources"] = "known";
    else if (c.methods.pipeline.music.n_sources)
        music["n_sources"] = *c.methods.pipeline.music.n_sources;
    else
        music["n_sources"] = "auto";
    music["peak_min_prominence_db"] = c.methods.pipeline.music.peak_min_prominence;
    music["min_eigen_gap"] = c.methods.pipeline.music.min_eigen_gap;
    music["refine"] = c.methods.pipeline.music.refine;
    music["route"] = enum_to_string(kRoute, c.methods.pipeline.music.route);

    json music2d = tau_grid_json("tau", c.methods.music2d.tau_grid);
    music2d["theta_min_deg"] = c.methods.music2d.theta_grid.start;
    music2d["theta_max_deg"] = c.methods.music2d.theta_grid.stop;
    music2d["theta_points"] = c.methods.music2d.theta_grid.points;
    music2d["forward_backward"] = c.methods.music2d.forward_backward;
    music2d["refine"] = c.methods.music2d.refine;
    music2d["route"] = enum_to_string(kRoute, c.methods.music2d.route);

    json rmse_grid = tau_grid_json("tau", c.rmse.music2d_tau);
    rmse_grid["theta_min_deg"] = c.rmse.music2d_theta.start;
    rmse_grid["theta_max_deg"] = c.rmse.music2d_theta.stop;
    rmse_grid["theta_points"] = c.rmse.music2d_theta.points;

    std::vector<std::string> methods;
    for (const auto& m : c.rmse.methods)
        methods.push_back(m.name());

    const auto& p = c.methods.pipeline;
    return {
        {"seed", c.seed},
        {"threads", c.threads},
        {"trials", c.trials},
        {"method", c.method.name()},
        {"system",
         {{"n_antennas", c.system.n_antennas},
          {"n_subcarriers", c.system.n_subcarriers},
          {"bandwidth_hz", c.system.bandwidth},
          {"n_frames", c.system.n_frames},
          {"m_digital", c.system.m_digital},
          {"snr_db", c.system.snr_db},
          {"analog_noise", enum_to_string(kAnalogNoise, c.system.analog_noise)}}},
        {"geometry",
         {{"base_range_m", c.geometry.base_range_m},
          {"base_theta_deg", c.geometry.base_theta_deg},
          {"second_theta_deg", c.geometry.second_theta_deg}}},
        {"association",
         {{"sigma_tau_m", round_sig(c.association.sigma_tau * kSpeedOfLight)},
          {"sigma_theta_deg", c.association.sigma_theta}}},
        {"pipeline",
         {{"rho", p.rho},
          {"pencil_p", p.pencil.pencil_p},
          {"rank_tol", p.pencil.rank_tol},
          {"rank_rule", enum_to_string(kRankRule, p.pencil.rank_rule)},
          {"merge_deg", p.merge_deg},
          {"music", music}}},
        {"music2d", music2d},
        {"equivalent_snr", enum_to_string(kScaling, c.methods.equivalent_snr)},
        {"resolve",
         {{"delta_l_m", values_json(c.resolve_grid.delta_l_m)},
          {"delta_theta_deg", values_json(c.resolve_grid.delta_theta_deg)}}},
        {"rmse",
         {{"gamma0_db", c.rmse.gamma0_db},
          {"methods", methods},
          {"trials", c.rmse.trials},
          {"range_min_m", c.rmse.range_min_m},
          {"range_max_m", c.rmse.range_max_m},
          {"theta_min_deg", c.rmse.theta_min_deg},
          {"theta_max_deg", c.rmse.theta_max_deg},
          {"music2d", rmse_grid}}},
        {"leakage",
         {{"close",
           {{"delta_l_m", values_json(c.leakage.close.delta_l_m)},
            {"delta_theta_deg", values_json(c.leakage.close.delta_theta_deg)}}},
          {"spread",
           {{"delta_l_m", values_json(c.leakage.spread.delta_l_m)},
            {"delta_theta_deg", values_json(c.leakage.spread.delta_theta_deg)}}},
          {"trials", c.leakage.trials}}},
        {"theory",
         {{"s", c.theory.s},
          {"delta_f_hz", c.theory.delta_f},
          {"f", c.theory.f},
          {"n", c.theory.n},
          {"gamma0_db", c.theory.gamma0_db},
          {"n_prime_min", c.theory.n_prime_min},
          {"n_prime_max", c.theory.n_prime_max},
          {"scaling", enum_to_string(kScaling, c.theory.scaling)}}},
        {"pattern",
         {{"n_antennas", c.pattern.n_antennas},
          {"paths_deg", c.pattern.paths_deg},
          {"gains", c.pattern.gains},
          {"xi", c.pattern.xi},
          {"varphi_deg", c.pattern.varphi_deg},
          {"grid_step_deg", c.pattern.grid_step_deg}}},
    };
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        fail("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        fail(path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

} // namespace jcs
