// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/theory.hpp"

#include "jcs/channel.hpp"
#include "jcs/error.hpp"

#include <cmath>

namespace jcs {

namespace {

void check_common(const TheoreticalResolutionInputs& in)
{
    if (!(in.s > 2.0) || !(in.n >= 1.0) || !(in.f >= 1.0) || !(in.delta_f > 0.0) || !(in.gamma > 0.0))
        throw Error(ErrorCode::InvalidInputs, "resolution inputs need S > 2, N >= 1, F >= 1, df > 0, gamma > 0");
}

} // namespace

double theoretical_toa_resolution(const TheoreticalResolutionInputs& in)
{
    check_common(in);
    const double ratio = 360.0 * (in.s - 2.0) / (in.gamma * in.s * in.f * in.n);
    return std::pow(ratio, 0.25) / (kPi * in.s * in.delta_f);
}

double theoretical_aoa_resolution(const TheoreticalResolutionInputs& in)
{
    check_common(in);
    if (!(in.n > 2.0))
        throw Error(ErrorCode::InvalidInputs, "angular resolution needs N > 2");
    const double ratio = 360.0 * (in.n - 2.0) / (in.gamma * in.n * in.f * in.s);
    return 2.0 / (kPi * in.n) * std::pow(ratio, 0.25);
}

double equivalent_snr(double gamma0, std::size_t n, std::size_t n_prime, EquivalentSnrScaling scaling)
{
    if (n_prime == 0)
        throw Error(ErrorCode::InvalidInputs, "n_prime must be positive");
    const double np = static_cast<double>(n_prime);
    switch (scaling) {
    case EquivalentSnrScaling::ArrayShare: return gamma0 * static_cast<double>(n) / np;
    case EquivalentSnrScaling::BandShare: return gamma0 * np / 2.0;
    case EquivalentSnrScaling::InverseBandShare: return gamma0 * 2.0 / np;
    }
    return gamma0;
}

std::vector<TheoryRow> theory_table(const TheoryParams& p)
{
    const double gamma0 = db_to_linear(p.gamma0_db);
    const double n = static_cast<double>(p.n);
    std::vector<TheoryRow> rows;

    const double prop_t = theoretical_toa_resolution({p.s, 1.0, p.f, p.delta_f, gamma0});
    const double prop_w = theoretical_aoa_resolution({p.s / n, n, p.f, p.delta_f, gamma0});
    rows.push_back({"proposed", 0, prop_t * 1e9, prop_w * 1e3});

    const double full_t = theoretical_toa_resolution({p.s, n, p.f, p.delta_f, gamma0});
    const double full_w = theoretical_aoa_resolution({p.s, n, p.f, p.delta_f, gamma0});
    rows.push_back({"full_mimo", 0, full_t * 1e9, full_w * 1e3});

    for (std::size_t np = p.n_prime_min; np <= p.n_prime_max; ++np) {
        const double s_eq = 2.0 * p.s / static_cast<double>(np);
        const double g = equivalent_snr(gamma0, p.n, np, p.scaling);
        const TheoreticalResolutionInputs in{s_eq, static_cast<double>(np), p.f, p.delta_f, g};
        rows.push_back({"equivalent", np, theoretical_toa_resolution(in) * 1e9,
                        theoretical_aoa_resolution(in) * 1e3});
    }
    return rows;
}

} // namespace jcs
