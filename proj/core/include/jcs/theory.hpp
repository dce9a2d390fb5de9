// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace jcs {

/// Inputs of the closed-form resolution limits. s and n are real so that
/// fractional narrowband subcarrier counts (S/M) can be evaluated.
struct TheoreticalResolutionInputs {
    double s = 0.0;
    double n = 1.0;
    double f = 1.0;
    double delta_f = 0.0;
    double gamma = 1.0; ///< linear SNR
};

/// delta_T = 1/(pi S df) * (360 (S-2) / (Gamma S F N))^(1/4), seconds.
double theoretical_toa_resolution(const TheoreticalResolutionInputs& in);

/// delta_omega = 2/(pi N) * (360 (N-2) / (Gamma N F S))^(1/4), radians per antenna.
double theoretical_aoa_resolution(const TheoreticalResolutionInputs& in);

/// SNR of a classical array with n_prime antennas relative to gamma0.
enum class EquivalentSnrScaling {
    ArrayShare,       ///< gamma0 * N / n_prime
    BandShare,        ///< gamma0 * n_prime / 2
    InverseBandShare, ///< gamma0 * 2 / n_prime
};

double equivalent_snr(double gamma0, std::size_t n, std::size_t n_prime, EquivalentSnrScaling scaling);

struct TheoryParams {
    double s = 1000.0;
    double delta_f = 400e3;
    double f = 10.0;
    std::size_t n = 16;
    double gamma0_db = 10.0;
    std::size_t n_prime_min = 4;
    std::size_t n_prime_max = 16;
    EquivalentSnrScaling scaling = EquivalentSnrScaling::ArrayShare;
};

struct TheoryRow {
    std::string arch; ///< proposed, full_mimo, equivalent
    std::size_t n_prime = 0;
    double delta_t_ns = 0.0;
    double delta_omega_mrad = 0.0;
};

/// Proposed receiver: delay from the single analog chain (N = 1, full S),
/// angle from the narrowband digital chains (N antennas, S / N subcarriers).
/// Full MIMO: N antennas, S subcarriers. Equivalent classical: n_prime
/// antennas, 2S / n_prime subcarriers.
std::vector<TheoryRow> theory_table(const TheoryParams& p);

} // namespace jcs
