// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/error.hpp"
#include "jcs/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jcs {

namespace {

std::size_t gap_rank(std::span<const double> s, std::size_t tol_rank)
{
    if (tol_rank <= 1)
        return tol_rank;
    // A cut after the last singular value is only a candidate when the
    // tolerance rule already dropped something beyond it.
    const std::size_t last = tol_rank < s.size() ? tol_rank : tol_rank - 1;
    double best = 0.0;
    std::size_t rank = 1;
    for (std::size_t r = 1; r <= last; ++r) {
        const double ratio = s[r] > 0.0 ? s[r - 1] / s[r] : std::numeric_limits<double>::infinity();
        if (ratio > best) {
            best = ratio;
            rank = r;
        }
    }
    return rank;
}

} // namespace

SpatialFrequencies matrix_pencil(std::span<const cd> h_vec, std::size_t pencil_p, double rank_tol)
{
    return matrix_pencil(h_vec, PencilConfig{pencil_p, rank_tol, PencilRankRule::Tolerance});
}

SpatialFrequencies matrix_pencil(std::span<const cd> h_vec, const PencilConfig& cfg)
{
    const std::size_t m = h_vec.size();
    const std::size_t p = cfg.pencil_p == 0 ? m / 2 : cfg.pencil_p;
    if (p < 1 || p >= m)
        throw Error(ErrorCode::InvalidInputs, "pencil parameter must satisfy 1 <= P < M");

    // Hankel matrix with rows 0..M-P-1; its last row ends at sample M-1, so
    // it has P+1 columns and the pencil pair is (M-P) x P.
    const std::size_t rows = m - p;
    CMatrix h1(rows, p);
    CMatrix h2(rows, p);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < p; ++c) {
            h1(r, c) = h_vec[r + c];
            h2(r, c) = h_vec[r + c + 1];
        }

    std::size_t max_rank = 0;
    if (cfg.rank_rule == PencilRankRule::LargestGap) {
        const SvdResult d = svd(h1);
        max_rank = gap_rank(d.s, numerical_rank(d.s, cfg.rank_tol));
    }
    const PencilEigenvalues ev = pencil_generalized_eigs(h1, h2, cfg.rank_tol, max_rank);

    SpatialFrequencies out;
    out.eigenvalues = ev.values;
    out.singular_values = ev.singular_values;
    out.phase_steps.reserve(ev.values.size());
    for (const auto& z : ev.values) {
        double phi = std::arg(z);
        if (phi <= -kPi)
            phi = kPi;
        out.phase_steps.push_back(phi);
    }
    return out;
}

double phase_step_to_angle(double phi)
{
    const double c = std::clamp(phi / kPi, -1.0, 1.0);
    return rad_to_deg(std::acos(c));
}

} // namespace jcs
