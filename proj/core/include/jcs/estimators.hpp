// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/channel.hpp"
#include "jcs/frontend.hpp"
#include "jcs/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jcs {

/// Uniform grid of `points` values from start to stop inclusive.
struct Grid {
    double start = 0.0;
    double stop = 1.0;
    std::size_t points = 2;

    double step() const noexcept { return (stop - start) / static_cast<double>(points - 1); }
    double value(std::size_t k) const noexcept { return start + static_cast<double>(k) * step(); }
    void validate(const char* what) const;
};

/// Default delay grid: 0 to 20 m path length in 1 cm steps.
Grid default_tau_grid();
/// Default azimuth grid for 2D-MUSIC, degrees: 0 to 180 in 0.1 deg steps.
Grid default_theta_grid();

/// How the signal subspace is obtained. FullCovariance diagonalizes the
/// rows x rows covariance; SnapshotGram diagonalizes the snapshots' Gram
/// matrix (cols x cols) and maps back, which is exact and much cheaper when
/// there are fewer snapshots than rows. Auto picks the smaller problem.
enum class SubspaceRoute { Auto, FullCovariance, SnapshotGram };

struct MusicConfig {
    /// Fixed source count; nullopt selects it from the largest eigenvalue
    /// ratio (and zero sources if no ratio reaches min_eigen_gap).
    std::optional<std::size_t> n_sources;
    Grid tau_grid = default_tau_grid();
    /// Peak must stand this many dB above its higher flanking valley. 0 keeps all.
    double peak_min_prominence = 0.0;
    double min_eigen_gap = 10.0;
    /// Golden-section refinement of each peak between its grid neighbours.
    bool refine = true;
    SubspaceRoute route = SubspaceRoute::Auto;

    void validate(std::size_t rows) const;
};

struct MusicSpectrum {
    std::vector<double> taus;
    std::vector<double> p_music;
};

struct ToaEstimates {
    std::vector<double> taus; ///< ascending, seconds
};

struct MusicToaResult {
    ToaEstimates toas;
    MusicSpectrum spectrum;
    std::size_t n_sources = 0;
    std::vector<double> eigenvalues; ///< covariance eigenvalues (non-zero part), descending
};

/// R_y = Y Y^H with Y the (S-1) x F matrix whose columns are the frames.
CMatrix build_covariance(const AnalogEstimate& h_a);

MusicToaResult music_toa(const AnalogEstimate& h_a, const MusicConfig& cfg, double delta_f);

/// Signal subspace of snapshot matrix y (rows x snapshots): returns the
/// nonzero eigenvalues of y y^H (descending) and matching unit eigenvectors.
EigenDecomposition signal_subspace(const CMatrix& y, SubspaceRoute route);

/// Index of the largest ratio lambda_k / lambda_{k+1} over the first
/// `usable` eigenvalues, plus one; 0 if no ratio reaches min_gap.
std::size_t count_sources_by_gap(std::span<const double> eigenvalues, std::size_t usable, double min_gap);

enum class PencilRankRule {
    /// Singular values above rank_tol * s_max.
    Tolerance,
    /// Largest ratio between consecutive singular values, among those
    /// above the tolerance cut.
    LargestGap,
};

struct PencilConfig {
    std::size_t pencil_p = 0; ///< 0 selects floor(M/2)
    double rank_tol = kDefaultRankTol;
    PencilRankRule rank_rule = PencilRankRule::Tolerance;
};

struct SpatialFrequencies {
    std::vector<double> phase_steps; ///< radians per antenna, (-pi, pi]
    CVector eigenvalues;
    std::vector<double> singular_values;
};

/// Matrix pencil on a length-M vector with Hankel rows 0..M-P-1.
SpatialFrequencies matrix_pencil(std::span<const cd> h_vec, std::size_t pencil_p,
                                 double rank_tol = kDefaultRankTol);
SpatialFrequencies matrix_pencil(std::span<const cd> h_vec, const PencilConfig& cfg);

/// acos(phi / pi) in degrees.
double phase_step_to_angle(double phi);

struct Music2dConfig {
    Grid tau_grid = default_tau_grid();
    Grid theta_grid = default_theta_grid(); ///< degrees
    bool forward_backward = true;
    bool refine = true;
    SubspaceRoute route = SubspaceRoute::Auto;
};

struct JointEstimate {
    double tau = 0.0;       ///< seconds
    double theta_deg = 0.0; ///< degrees
    double p_music = 0.0;
};

/// Joint delay/azimuth MUSIC on a fully digital estimate tensor with a
/// known number of components. Returns at most k_true peaks, strongest first.
std::vector<JointEstimate> music_2d(const CfrTensor& estimates, std::size_t k_true, const Music2dConfig& cfg,
                                    double delta_f);

} // namespace jcs
