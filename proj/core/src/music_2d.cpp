// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/error.hpp"
#include "jcs/estimators.hpp"
#include "jcs/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jcs {

namespace {

// Snapshot layout: element q * N + n holds antenna n at subcarrier range.at(q).
class JointProjector {
public:
    JointProjector(const EigenDecomposition& sub, std::size_t k, SubcarrierRange range, std::size_t n_ant,
                   double delta_f)
        : range_(range), n_ant_(n_ant), delta_f_(delta_f), rows_(range.size() * n_ant), u_(k, CVector(rows_)),
          a_(rows_)
    {
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t r = 0; r < rows_; ++r)
                u_[j][r] = sub.vectors(r, j);
    }

    const std::vector<CVector>& vectors() const noexcept { return u_; }

    double distance(double tau, double theta_deg)
    {
        const double w = -2.0 * kPi * delta_f_ * tau;
        const cd step = std::polar(1.0, w);
        cd z = std::polar(1.0, w * static_cast<double>(range_.first));
        const double ant_step = kPi * std::cos(deg_to_rad(theta_deg));
        CVector ant(n_ant_);
        for (std::size_t n = 0; n < n_ant_; ++n)
            ant[n] = std::polar(1.0, static_cast<double>(n) * ant_step);
        for (std::size_t q = 0; q < range_.size(); ++q) {
            for (std::size_t n = 0; n < n_ant_; ++n)
                a_[q * n_ant_ + n] = z * ant[n];
            z *= step;
        }
        for (const auto& u : u_) {
            const cd proj = dot(u, a_);
            for (std::size_t r = 0; r < rows_; ++r)
                a_[r] -= u[r] * proj;
        }
        return std::max(norm2(a_), std::numeric_limits<double>::min());
    }

private:
    SubcarrierRange range_;
    std::size_t n_ant_;
    double delta_f_;
    std::size_t rows_;
    std::vector<CVector> u_;
    CVector a_;
};

} // namespace

std::vector<JointEstimate> music_2d(const CfrTensor& est, std::size_t k_true, const Music2dConfig& cfg,
                                    double delta_f)
{
    if (k_true < 1)
        throw Error(ErrorCode::InvalidInputs, "2D-MUSIC needs k_true >= 1");
    if (!(delta_f > 0.0))
        throw Error(ErrorCode::InvalidInputs, "subcarrier spacing must be positive");
    cfg.tau_grid.validate("2D-MUSIC tau grid");
    cfg.theta_grid.validate("2D-MUSIC theta grid");

    const std::size_t n_ant = est.n_antennas();
    const std::size_t f = est.n_frames();
    const auto range = est.range();
    const std::size_t n_sc = range.size();
    const std::size_t rows = n_sc * n_ant;
    if (rows == 0 || f == 0)
        throw Error(ErrorCode::ShapeMismatch, "empty estimate tensor");
    if (k_true >= rows)
        throw Error(ErrorCode::InvalidInputs, "k_true must be below the snapshot length");

    const std::size_t cols = cfg.forward_backward ? 2 * f : f;
    CMatrix z(rows, cols);
    const double scale = cfg.forward_backward ? 1.0 / std::sqrt(2.0) : 1.0;
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t q = 0; q < n_sc; ++q)
            for (std::size_t n = 0; n < n_ant; ++n)
                z(q * n_ant + n, i) = scale * est.at(n, i, range.at(q));
    if (cfg.forward_backward)
        for (std::size_t i = 0; i < f; ++i)
            for (std::size_t r = 0; r < rows; ++r)
                z(r, f + i) = std::conj(z(rows - 1 - r, i));

    const EigenDecomposition sub = signal_subspace(z, cfg.route);
    const std::size_t k = std::min(k_true, sub.values.size());
    JointProjector proj(sub, k, range, n_ant, delta_f);

    const Grid& tg = cfg.tau_grid;
    const Grid& ag = cfg.theta_grid;
    const std::size_t nt = tg.points;
    const std::size_t na = ag.points;

    CMatrix a_theta(n_ant, na);
    for (std::size_t j = 0; j < na; ++j) {
        const double st = kPi * std::cos(deg_to_rad(ag.value(j)));
        for (std::size_t n = 0; n < n_ant; ++n)
            a_theta(n, j) = std::polar(1.0, static_cast<double>(n) * st);
    }

    // D(t, j) = ||a||^2 - sum_k |a_tau(t)^T conj(U_k) a_theta(j)|^2
    std::vector<double> d(nt * na, static_cast<double>(rows));
    CMatrix g(nt, n_ant);
    for (const auto& u : proj.vectors()) {
        for (std::size_t t = 0; t < nt; ++t) {
            const double w = -2.0 * kPi * delta_f * tg.value(t);
            const cd step = std::polar(1.0, w);
            cd zz = std::polar(1.0, w * static_cast<double>(range.first));
            auto grow = g.row(t);
            std::fill(grow.begin(), grow.end(), cd{});
            for (std::size_t q = 0; q < n_sc; ++q) {
                for (std::size_t n = 0; n < n_ant; ++n)
                    grow[n] += zz * std::conj(u[q * n_ant + n]);
                zz *= step;
            }
        }
        const CMatrix proj_grid = g * a_theta;
        for (std::size_t idx = 0; idx < nt * na; ++idx)
            d[idx] -= std::norm(proj_grid.data()[idx]);
    }

    // Local minima of D over the 8-neighbourhood. Ties go to the lowest
    // linear index so flat directions (one antenna) yield a single peak.
    std::vector<std::size_t> peaks;
    for (std::size_t t = 1; t + 1 < nt; ++t) {
        for (std::size_t j = 0; j < na; ++j) {
            const double v = d[t * na + j];
            bool is_min = true;
            for (int dt = -1; dt <= 1 && is_min; ++dt) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (dt == 0 && dj == 0)
                        continue;
                    const long jj = static_cast<long>(j) + dj;
                    if (jj < 0 || jj >= static_cast<long>(na))
                        continue;
                    const auto tt = static_cast<std::size_t>(static_cast<long>(t) + dt);
                    const double nb = d[tt * na + static_cast<std::size_t>(jj)];
                    const bool lower_index = dt < 0 || (dt == 0 && dj < 0);
                    if (lower_index ? !(v < nb) : !(v <= nb)) {
                        is_min = false;
                        break;
                    }
                }
            }
            if (is_min)
                peaks.push_back(t * na + j);
        }
    }
    if (peaks.empty())
        throw Error(ErrorCode::NoPeaksFound, "2D-MUSIC spectrum has no local maxima");
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    std::vector<JointEstimate> out;
    const std::size_t take = std::min(k_true, peaks.size());
    const double st = tg.step();
    const double sa = ag.step();
    for (std::size_t p = 0; p < take; ++p) {
        double tau = tg.value(peaks[p] / na);
        double theta = ag.value(peaks[p] % na);
        if (cfg.refine) {
            const double t_lo = std::max(tg.start, tau - st), t_hi = std::min(tg.stop, tau + st);
            const double a_lo = std::max(ag.start, theta - sa), a_hi = std::min(ag.stop, theta + sa);
            for (int round = 0; round < 3; ++round) {
                tau = golden_section_min([&](double x) { return proj.distance(x, theta); }, t_lo, t_hi);
                theta = golden_section_min([&](double x) { return proj.distance(tau, x); }, a_lo, a_hi);
            }
        }
        out.push_back({tau, theta, 1.0 / proj.distance(tau, theta)});
    }

    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = a + 1; b < out.size(); ++b)
            if (std::abs(out[a].tau - out[b].tau) < 1e-3 * st && std::abs(out[a].theta_deg - out[b].theta_deg) < 1e-3 * sa)
                throw Error(ErrorCode::GridTooCoarse, "two 2D-MUSIC peaks refined to the same point");
    return out;
}

} // namespace jcs
