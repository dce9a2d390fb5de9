// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/scenario.hpp"

#include "jcs/error.hpp"
#include "jcs/rng.hpp"

#include <numeric>

namespace jcs {

namespace {

enum Stream : std::uint64_t {
    kPriorGains = 1,
    kPriorNoise = 2,
    kSensingGains = 3,
    kAnalogNoise = 4,
    kDigitalNoise = 5,
    kFullDigitalNoise = 6,
};

std::vector<std::size_t> first_antennas(std::size_t m)
{
    std::vector<std::size_t> set(m);
    std::iota(set.begin(), set.end(), std::size_t{0});
    return set;
}

} // namespace

void SystemParams::validate() const
{
    if (n_antennas < 1 || n_subcarriers < 2 || n_frames < 1 || !(bandwidth > 0.0))
        throw Error(ErrorCode::ConfigError, "system needs N >= 1, S >= 2, F >= 1, B_A > 0");
    if (m_digital < 1 || m_digital > n_antennas)
        throw Error(ErrorCode::ConfigError, "digital antenna count must lie in [1, N]");
    if (!SubcarrierRange::narrowband(n_subcarriers, m_digital).contains(0))
        throw Error(ErrorCode::ConfigError, "narrowband range must contain the DC subcarrier");
}

MultipathChannel make_channel(const SystemParams& sys, std::vector<PathComponent> paths)
{
    sys.validate();
    MultipathChannel ch;
    ch.paths = std::move(paths);
    ch.n_antennas = sys.n_antennas;
    ch.n_subcarriers = sys.n_subcarriers;
    ch.subcarrier_spacing = sys.subcarrier_spacing();
    ch.n_frames = sys.n_frames;
    ch.validate();
    return ch;
}

MultipathChannel two_path_channel(const SystemParams& sys, const TwoPathGeometry& geo, double delta_l_m,
                                  double delta_theta_deg)
{
    return make_channel(sys, {
                                 {geo.base_range_m / kSpeedOfLight, deg_to_rad(geo.base_theta_deg), 1.0},
                                 {(geo.base_range_m + delta_l_m) / kSpeedOfLight,
                                  deg_to_rad(geo.second_theta_deg + delta_theta_deg), 1.0},
                             });
}

std::string Method::name() const
{
    switch (kind) {
    case Kind::Proposed: return "proposed";
    case Kind::Music2dFull: return "music2d_full";
    case Kind::Music2dEquiv: return "music2d_equiv(" + std::to_string(n_prime) + ")";
    }
    return "unknown";
}

Method Method::parse(const std::string& text)
{
    if (text == "proposed")
        return {Kind::Proposed, 0};
    if (text == "music2d_full")
        return {Kind::Music2dFull, 0};
    const std::string prefix = "music2d_equiv(";
    if (text.size() > prefix.size() + 1 && text.compare(0, prefix.size(), prefix) == 0 && text.back() == ')') {
        const std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(digits, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == digits.size() && v > 0)
            return {Kind::Music2dEquiv, static_cast<std::size_t>(v)};
    }
    throw Error(ErrorCode::ConfigError, "unknown method '" + text + "'");
}

ProposedObservation observe_proposed(const MultipathChannel& channel, const SystemParams& sys, double snr_linear,
                                     std::uint64_t seed)
{
    const double sigma = noise_sigma_for_snr(channel, snr_linear);
    const auto antennas = first_antennas(sys.m_digital);

    MultipathChannel prior = channel;
    prior.n_frames = 1;
    const CfrTensor prior_cfr = synthesize_cfr(prior, draw_frame_gains(prior, derive_seed(seed, {kPriorGains})));
    const DigitalEstimateSet prior_dig =
        digital_estimates(prior_cfr, antennas, sys.m_digital, sigma, derive_seed(seed, {kPriorNoise}));
    const BeamWeights start{CVector(channel.n_antennas, cd{1.0}), 0};
    ProposedObservation obs;
    obs.beam = update_beam_mrc_iir(start, prior_dig, 0, 0.0);

    const CfrTensor cfr = synthesize_cfr(channel, draw_frame_gains(channel, derive_seed(seed, {kSensingGains})));
    obs.h_a = analog_estimate(cfr, std::span<const BeamWeights>(&obs.beam, 1), sigma,
                              derive_seed(seed, {kAnalogNoise}), sys.analog_noise);
    obs.h_d = digital_estimates(cfr, antennas, sys.m_digital, sigma, derive_seed(seed, {kDigitalNoise}));
    return obs;
}

std::vector<Detection> run_method(const Method& method, const MultipathChannel& channel, const SystemParams& sys,
                                  const MethodConfig& cfg, double snr_linear, std::uint64_t seed)
{
    if (method.kind == Method::Kind::Proposed) {
        const ProposedObservation obs = observe_proposed(channel, sys, snr_linear, seed);
        return run_pipeline(obs.h_a, obs.h_d, cfg.pipeline, channel.subcarrier_spacing);
    }

    MultipathChannel ch = channel;
    double snr = snr_linear;
    if (method.kind == Method::Kind::Music2dEquiv) {
        ch = equivalent_classical_channel(channel, method.n_prime);
        snr = equivalent_snr(snr_linear, channel.n_antennas, method.n_prime, cfg.equivalent_snr);
    }
    const double sigma = noise_sigma_for_snr(ch, snr);
    const CfrTensor cfr = synthesize_cfr(ch, draw_frame_gains(ch, derive_seed(seed, {kSensingGains})));
    const CfrTensor est = full_digital_estimate(cfr, sigma, derive_seed(seed, {kFullDigitalNoise}));

    std::vector<JointEstimate> peaks;
    try {
        peaks = music_2d(est, ch.paths.size(), cfg.music2d, ch.subcarrier_spacing);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoPeaksFound && e.code() != ErrorCode::GridTooCoarse)
            throw;
        return {};
    }
    std::vector<Detection> out;
    out.reserve(peaks.size());
    for (const auto& pk : peaks)
        out.push_back({pk.tau, pk.theta_deg, cd{pk.p_music, 0.0}, std::nullopt});
    return out;
}

} // namespace jcs
