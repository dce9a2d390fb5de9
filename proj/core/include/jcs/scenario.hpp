// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/channel.hpp"
#include "jcs/estimators.hpp"
#include "jcs/frontend.hpp"
#include "jcs/pipeline.hpp"
#include "jcs/theory.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace jcs {

/// Receiver and link parameters shared by all experiments.
struct SystemParams {
    std::size_t n_antennas = 16;
    std::size_t n_subcarriers = 128;
    double bandwidth = 400e6; ///< B_A, Hz
    std::size_t n_frames = 10;
    std::size_t m_digital = 16;
    double snr_db = 10.0; ///< per antenna
    AnalogNoise analog_noise = AnalogNoise::PerAntenna;

    double subcarrier_spacing() const noexcept { return bandwidth / static_cast<double>(n_subcarriers); }
    void validate() const;
};

/// Two targets: the first at (base_range_m, base_theta_deg), the second at
/// (base_range_m + delta_l, second_theta_deg + delta_theta).
struct TwoPathGeometry {
    double base_range_m = 10.0;
    double base_theta_deg = 30.0;
    double second_theta_deg = 30.0;
};

MultipathChannel make_channel(const SystemParams& sys, std::vector<PathComponent> paths);
MultipathChannel two_path_channel(const SystemParams& sys, const TwoPathGeometry& geo, double delta_l_m,
                                  double delta_theta_deg);

struct Method {
    enum class Kind { Proposed, Music2dFull, Music2dEquiv };
    Kind kind = Kind::Proposed;
    std::size_t n_prime = 0;

    /// proposed, music2d_full, music2d_equiv(N')
    std::string name() const;
    /// Accepts the names above; throws ConfigError otherwise.
    static Method parse(const std::string& text);

    friend bool operator==(const Method&, const Method&) = default;
};

struct MethodConfig {
    PipelineConfig pipeline;
    Music2dConfig music2d;
    EquivalentSnrScaling equivalent_snr = EquivalentSnrScaling::BandShare;
};

/// Everything the proposed receiver sees in one trial.
struct ProposedObservation {
    BeamWeights beam;
    AnalogEstimate h_a;
    DigitalEstimateSet h_d;
};

/// One prior frame designs the MRC beam from noisy per-antenna DC
/// estimates; F fresh frames are then observed with that beam.
ProposedObservation observe_proposed(const MultipathChannel& channel, const SystemParams& sys, double snr_linear,
                                     std::uint64_t seed);

/// Runs one method on one channel realization. Truth geometry comes from
/// `channel`; the equivalent classical method rebuilds it with n_prime
/// antennas. Estimator failures that mean "nothing found" return empty.
std::vector<Detection> run_method(const Method& method, const MultipathChannel& channel, const SystemParams& sys,
                                  const MethodConfig& cfg, double snr_linear, std::uint64_t seed);

} // namespace jcs
