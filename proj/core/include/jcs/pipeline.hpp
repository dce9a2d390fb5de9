// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/estimators.hpp"
#include "jcs/frontend.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace jcs {

/// alpha_hat(l, i): coefficient of delay l in frame i.
struct PathCoefficients {
    CMatrix alpha_hat;
};

/// MRC-combined narrowband response of one delay, one entry per antenna of
/// the digital set.
struct CombinedDigitalChannel {
    CVector h_bar;
};

struct Detection {
    double tau = 0.0;       ///< seconds
    double theta_deg = 0.0; ///< degrees
    cd amplitude{};
    std::optional<bool> leaked;
};

struct PipelineConfig {
    double rho = 0.3;
    /// Singular values above 5% of the largest count as signal; the
    /// amplitude threshold then prunes what noise remains.
    PencilConfig pencil{0, 5e-2, PencilRankRule::Tolerance};
    MusicConfig music;
    /// Components of the same delay closer than this (degrees) are merged.
    double merge_deg = 0.05;

    void validate() const;
};

/// alpha_hat(l, i) = sum_s e^{j 2 pi tau_l s df} H_A(i, s) over the full range.
PathCoefficients estimate_path_coefficients(const AnalogEstimate& h_a, const ToaEstimates& taus, double delta_f);

/// H_bar(m) = sum_i sum_s conj(alpha_hat(l, i)) e^{j 2 pi tau s df} H_m(i, s)
/// over the narrowband range.
CombinedDigitalChannel amplify_path(const DigitalEstimateSet& h_d, const PathCoefficients& coeffs, std::size_t path,
                                    double tau, double delta_f);

/// a_q = sum_d H_bar(d) e^{-j phi_q d}; keeps |a_q| > rho * rms(H_bar).
/// Detections carry `tau` as their delay.
std::vector<Detection> amplitude_and_threshold(const CombinedDigitalChannel& h_bar, const SpatialFrequencies& freqs,
                                               double rho, double tau = 0.0, double merge_deg = 0.05);

/// ToA -> coefficients -> amplification -> matrix pencil -> threshold.
std::vector<Detection> run_pipeline(const AnalogEstimate& h_a, const DigitalEstimateSet& h_d,
                                    const PipelineConfig& cfg, double delta_f);

} // namespace jcs
