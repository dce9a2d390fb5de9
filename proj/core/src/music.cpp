// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/error.hpp"
#include "jcs/estimators.hpp"
#include "jcs/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace jcs {

void Grid::validate(const char* what) const
{
    if (points < 2 || !(stop > start) || !std::isfinite(start) || !std::isfinite(stop))
        throw Error(ErrorCode::InvalidInputs, std::string(what) + ": grid needs >= 2 points and stop > start");
}

Grid default_tau_grid() { return {0.0, 20.0 / kSpeedOfLight, 2001}; }
Grid default_theta_grid() { return {0.0, 180.0, 1801}; }

void MusicConfig::validate(std::size_t rows) const
{
    tau_grid.validate("music tau grid");
    if (n_sources && *n_sources >= rows)
        throw Error(ErrorCode::InvalidInputs, "fixed source count must be below the covariance size");
    if (!(min_eigen_gap >= 1.0))
        throw Error(ErrorCode::InvalidInputs, "min_eigen_gap must be >= 1");
}

CMatrix build_covariance(const AnalogEstimate& h_a)
{
    // Y = h_a^T, so Y Y^H = (h_a^H h_a)^T = conj(h_a^H h_a).
    CMatrix g = adjoint_times(h_a.h_a, h_a.h_a);
    for (auto& z : g.data())
        z = std::conj(z);
    return g;
}

EigenDecomposition signal_subspace(const CMatrix& y, SubspaceRoute route)
{
    const std::size_t rows = y.rows();
    const std::size_t cols = y.cols();
    const std::size_t usable = std::min(rows, cols);
    if (route == SubspaceRoute::Auto)
        route = cols < rows ? SubspaceRoute::SnapshotGram : SubspaceRoute::FullCovariance;

    EigenDecomposition out;
    if (route == SubspaceRoute::FullCovariance) {
        const CMatrix r = y * y.adjoint();
        EigenDecomposition full = eig_hermitian(r);
        out.values.assign(full.values.begin(), full.values.begin() + static_cast<std::ptrdiff_t>(usable));
        out.vectors = full.vectors.columns(0, usable);
        return out;
    }

    const EigenDecomposition g = eig_hermitian(adjoint_times(y, y));
    out.values.assign(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(usable));
    out.vectors = CMatrix(rows, usable);
    const CMatrix yv = y * g.vectors.columns(0, usable);
    for (std::size_t k = 0; k < usable; ++k) {
        double nrm = 0.0;
        for (std::size_t r = 0; r < rows; ++r)
            nrm += std::norm(yv(r, k));
        nrm = std::sqrt(nrm);
        if (nrm == 0.0)
            continue;
        for (std::size_t r = 0; r < rows; ++r)
            out.vectors(r, k) = yv(r, k) / nrm;
    }
    return out;
}

std::size_t count_sources_by_gap(std::span<const double> eigenvalues, std::size_t usable, double min_gap)
{
    usable = std::min(usable, eigenvalues.size());
    if (usable == 0 || !(eigenvalues[0] > 0.0))
        return 0;
    if (usable == 1)
        return 1;
    // Eigenvalues this far below the largest are roundoff from exact
    // (noiseless) data; clamping them stops ratios between two roundoff
    // values from outbidding the real signal/noise gap.
    const double floor = 1e-12 * eigenvalues[0];
    auto clamped = [&](std::size_t k) { return std::max(eigenvalues[k], floor); };
    double best = 0.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k + 1 < usable; ++k) {
        const double ratio = clamped(k) / clamped(k + 1);
        if (ratio > best) {
            best = ratio;
            best_k = k;
        }
    }
    return best >= min_gap ? best_k + 1 : 0;
}

namespace {

// Distance of the delay steering vector from the signal subspace,
// ||a - U U^H a||^2, which is a^H U_n U_n^H a for an orthonormal split.
class DelayProjector {
public:
    DelayProjector(const EigenDecomposition& sub, std::size_t k, SubcarrierRange range, double delta_f)
        : range_(range), delta_f_(delta_f), rows_(range.size()), k_(k), ure_(k * rows_), uim_(k * rows_),
          are_(rows_), aim_(rows_)
    {
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t r = 0; r < rows_; ++r) {
                ure_[j * rows_ + r] = sub.vectors(r, j).real();
                uim_[j * rows_ + r] = sub.vectors(r, j).imag();
            }
    }

    double distance(double tau)
    {
        load(tau);
        return residual();
    }

    /// 1 / distance over the whole grid. Consecutive steering vectors differ
    /// by a fixed per-subcarrier rotation, applied elementwise and reloaded
    /// exactly every kReload points to bound drift.
    void spectrum(const Grid& grid, std::vector<double>& p)
    {
        constexpr std::size_t kReload = 64;
        std::vector<double> dre(rows_), dim(rows_);
        const double w = -2.0 * kPi * delta_f_ * grid.step();
        for (std::size_t r = 0; r < rows_; ++r) {
            const cd d = std::polar(1.0, w * static_cast<double>(range_.at(r)));
            dre[r] = d.real();
            dim[r] = d.imag();
        }
        p.resize(grid.points);
        for (std::size_t k = 0; k < grid.points; ++k) {
            if (k % kReload == 0) {
                load(grid.value(k));
            } else {
                for (std::size_t r = 0; r < rows_; ++r) {
                    const double re = are_[r] * dre[r] - aim_[r] * dim[r];
                    const double im = are_[r] * dim[r] + aim_[r] * dre[r];
                    are_[r] = re;
                    aim_[r] = im;
                }
            }
            p[k] = 1.0 / residual();
        }
    }

private:
    void load(double tau)
    {
        const double w = -2.0 * kPi * delta_f_ * tau;
        const cd step = std::polar(1.0, w);
        cd z = std::polar(1.0, w * static_cast<double>(range_.first));
        for (std::size_t r = 0; r < rows_; ++r) {
            are_[r] = z.real();
            aim_[r] = z.imag();
            z *= step;
        }
    }

    double residual()
    {
        // Projections first (basis is orthonormal), then one pass for
        // ||a - U p||^2 so small distances keep their relative accuracy.
        double pre[kMaxFast], pim[kMaxFast];
        std::vector<double> pre_big, pim_big;
        double* pr = pre;
        double* pi = pim;
        if (k_ > kMaxFast) {
            pre_big.resize(k_);
            pim_big.resize(k_);
            pr = pre_big.data();
            pi = pim_big.data();
        }
        for (std::size_t j = 0; j < k_; ++j) {
            const double* ur = &ure_[j * rows_];
            const double* ui = &uim_[j * rows_];
            double sr = 0.0, si = 0.0;
            for (std::size_t r = 0; r < rows_; ++r) {
                sr += ur[r] * are_[r] + ui[r] * aim_[r];
                si += ur[r] * aim_[r] - ui[r] * are_[r];
            }
            pr[j] = sr;
            pi[j] = si;
        }
        double acc = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            double er = are_[r], ei = aim_[r];
            for (std::size_t j = 0; j < k_; ++j) {
                const double ur = ure_[j * rows_ + r], ui = uim_[j * rows_ + r];
                er -= ur * pr[j] - ui * pi[j];
                ei -= ur * pi[j] + ui * pr[j];
            }
            acc += er * er + ei * ei;
        }
        return std::max(acc, std::numeric_limits<double>::min());
    }

    static constexpr std::size_t kMaxFast = 16;

    SubcarrierRange range_;
    double delta_f_;
    std::size_t rows_;
    std::size_t k_;
    std::vector<double> ure_, uim_;
    std::vector<double> are_, aim_;
};

std::vector<std::size_t> rank_peaks(std::span<const double> p, double min_prominence_db)
{
    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
        if (!(p[k] > p[k - 1] && p[k] > p[k + 1]))
            continue;
        if (min_prominence_db > 0.0) {
            double left = p[k];
            for (std::size_t j = k; j-- > 0 && p[j] <= p[k];)
                left = std::min(left, p[j]);
            double right = p[k];
            for (std::size_t j = k + 1; j < p.size() && p[j] <= p[k]; ++j)
                right = std::min(right, p[j]);
            if (10.0 * std::log10(p[k] / std::max(left, right)) < min_prominence_db)
                continue;
        }
        peaks.push_back(k);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
    return peaks;
}

} // namespace

MusicToaResult music_toa(const AnalogEstimate& h_a, const MusicConfig& cfg, double delta_f)
{
    const std::size_t rows = h_a.range.size();
    const std::size_t f = h_a.n_frames();
    if (f == 0 || h_a.h_a.cols() != rows)
        throw Error(ErrorCode::ShapeMismatch, "analog estimate does not match its subcarrier range");
    if (!(delta_f > 0.0))
        throw Error(ErrorCode::InvalidInputs, "subcarrier spacing must be positive");
    cfg.validate(rows);

    const CMatrix y = h_a.h_a.transpose();
    const EigenDecomposition sub = signal_subspace(y, cfg.route);
    const std::size_t usable = sub.values.size();

    MusicToaResult out;
    out.eigenvalues = sub.values;
    out.n_sources = cfg.n_sources ? std::min(*cfg.n_sources, usable)
                                  : count_sources_by_gap(sub.values, usable, cfg.min_eigen_gap);

    DelayProjector proj(sub, out.n_sources, h_a.range, delta_f);
    const Grid& grid = cfg.tau_grid;
    out.spectrum.taus.resize(grid.points);
    for (std::size_t k = 0; k < grid.points; ++k)
        out.spectrum.taus[k] = grid.value(k);
    proj.spectrum(grid, out.spectrum.p_music);
    if (out.n_sources == 0)
        return out;

    const auto peaks = rank_peaks(out.spectrum.p_music, cfg.peak_min_prominence);
    if (peaks.empty())
        throw Error(ErrorCode::NoPeaksFound, "MUSIC spectrum has no local maxima");

    const std::size_t take = std::min(out.n_sources, peaks.size());
    const double step = grid.step();
    for (std::size_t j = 0; j < take; ++j) {
        double tau = grid.value(peaks[j]);
        if (cfg.refine)
            tau = golden_section_min([&](double t) { return proj.distance(t); }, std::max(grid.start, tau - step),
                                     std::min(grid.stop, tau + step));
        out.toas.taus.push_back(tau);
    }
    std::sort(out.toas.taus.begin(), out.toas.taus.end());
    return out;
}

} // namespace jcs
