// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/beam.hpp"

#include "jcs/error.hpp"

#include <cmath>
#include <limits>

namespace jcs {

std::vector<double> default_pattern_grid()
{
    std::vector<double> g(721);
    for (std::size_t k = 0; k < g.size(); ++k)
        g[k] = 0.25 * static_cast<double>(k);
    return g;
}

CVector ula_steering(std::size_t n, double theta_deg)
{
    CVector out(n);
    const double step = kPi * std::cos(deg_to_rad(theta_deg));
    for (std::size_t k = 0; k < n; ++k)
        out[k] = std::polar(1.0, static_cast<double>(k) * step);
    return out;
}

FarfieldPattern array_factor(const BeamWeights& beta, std::span<const double> phi_grid_deg)
{
    beta.validate();
    if (phi_grid_deg.empty())
        throw Error(ErrorCode::InvalidInputs, "pattern grid is empty");
    FarfieldPattern out;
    out.phi_grid.assign(phi_grid_deg.begin(), phi_grid_deg.end());
    out.af.resize(phi_grid_deg.size());
    out.gain_db.resize(phi_grid_deg.size());
    for (std::size_t k = 0; k < phi_grid_deg.size(); ++k) {
        const CVector a = ula_steering(beta.beta.size(), phi_grid_deg[k]);
        out.af[k] = dot(beta.beta, a);
        const double mag = std::abs(out.af[k]);
        out.gain_db[k] = 20.0 * std::log10(std::max(mag, std::numeric_limits<double>::min()));
    }
    return out;
}

PerturbedBeam perturb_beam(const BeamWeights& beta, double xi, double varphi_deg)
{
    if (!(xi > 0.0 && xi < 1.0))
        throw Error(ErrorCode::XiOutOfRange, "xi must lie in (0, 1)");
    beta.validate();
    PerturbedBeam out{xi, varphi_deg, beta};
    const CVector lobe = ula_steering(beta.beta.size(), varphi_deg);
    for (std::size_t n = 0; n < lobe.size(); ++n)
        out.beta_prime.beta[n] = xi * lobe[n] + (1.0 - xi) * beta.beta[n];
    return out;
}

double snr_penalty_db(double xi)
{
    if (!(xi > 0.0 && xi < 1.0))
        throw Error(ErrorCode::XiOutOfRange, "xi must lie in (0, 1)");
    return -20.0 * std::log10(1.0 - xi);
}

BeamWeights mrc_beam(std::span<const PathComponent> paths, std::span<const cd> alphas, std::size_t n_antennas)
{
    if (paths.size() != alphas.size() || paths.empty())
        throw Error(ErrorCode::ShapeMismatch, "need one gain per path");
    BeamWeights out{CVector(n_antennas), 0};
    for (std::size_t k = 0; k < paths.size(); ++k) {
        const CVector a = ula_steering(n_antennas, rad_to_deg(paths[k].theta));
        for (std::size_t n = 0; n < n_antennas; ++n)
            out.beta[n] += alphas[k] * a[n];
    }
    return out;
}

std::vector<PathBeam> mrc_beam_decomposition(std::span<const PathComponent> paths, std::span<const cd> alphas,
                                             std::size_t n_antennas, std::span<const double> phi_grid_deg)
{
    if (paths.size() != alphas.size() || paths.empty())
        throw Error(ErrorCode::ShapeMismatch, "need one gain per path");
    std::vector<PathBeam> out;
    out.reserve(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) {
        const BeamWeights single{ula_steering(n_antennas, rad_to_deg(paths[k].theta)), 0};
        out.push_back({std::conj(alphas[k]), array_factor(single, phi_grid_deg)});
    }

    const FarfieldPattern total = array_factor(mrc_beam(paths, alphas, n_antennas), phi_grid_deg);
    double scale = 0.0;
    for (const auto& z : total.af)
        scale = std::max(scale, std::abs(z));
    for (std::size_t g = 0; g < phi_grid_deg.size(); ++g) {
        cd sum{};
        for (const auto& pb : out)
            sum += pb.weight * pb.pattern.af[g];
        if (std::abs(sum - total.af[g]) > 1e-10 * std::max(scale, 1.0))
            throw Error(ErrorCode::InvalidInputs, "per-path patterns do not sum to the MRC pattern");
    }
    return out;
}

} // namespace jcs
