// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/channel.hpp"
#include "jcs/frontend.hpp"

#include <span>
#include <vector>

namespace jcs {

/// AF(phi) = sum_n conj(beta_n) e^{j n pi cos(phi)} on a grid in degrees.
struct FarfieldPattern {
    std::vector<double> phi_grid;
    CVector af;
    std::vector<double> gain_db; ///< 20 log10 |AF|, relative
};

struct PerturbedBeam {
    double xi = 0.0;
    double varphi = 0.0; ///< degrees
    BeamWeights beta_prime;
};

struct PathBeam {
    cd weight;           ///< conj(alpha_k)
    FarfieldPattern pattern; ///< AF_k
};

/// 0 to 180 degrees in 0.25 degree steps.
std::vector<double> default_pattern_grid();

/// Steering weights e^{j n pi cos(theta)} for n = 0..n-1 (theta in degrees).
CVector ula_steering(std::size_t n, double theta_deg);

FarfieldPattern array_factor(const BeamWeights& beta, std::span<const double> phi_grid_deg);

/// beta'_n = xi e^{j n pi cos(varphi)} + (1 - xi) beta_n.
PerturbedBeam perturb_beam(const BeamWeights& beta, double xi, double varphi_deg);

/// -20 log10(1 - xi).
double snr_penalty_db(double xi);

/// MRC beam beta_n = sum_k alpha_k e^{j n pi cos(theta_k)} split into one
/// pattern per path so that AF = sum_k conj(alpha_k) AF_k.
std::vector<PathBeam> mrc_beam_decomposition(std::span<const PathComponent> paths, std::span<const cd> alphas,
                                             std::size_t n_antennas, std::span<const double> phi_grid_deg);

/// MRC weights for the paths above.
BeamWeights mrc_beam(std::span<const PathComponent> paths, std::span<const cd> alphas, std::size_t n_antennas);

} // namespace jcs
