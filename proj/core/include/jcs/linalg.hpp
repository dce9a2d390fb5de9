// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace jcs {

using cd = std::complex<double>;
using CVector = std::vector<cd>;

/// Dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols, cd fill = cd{0.0, 0.0});
    CMatrix(std::initializer_list<std::initializer_list<cd>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const double> values);
    /// Column vector (n x 1).
    static CMatrix column(std::span<const cd> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool square() const noexcept { return rows_ == cols_; }

    cd& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cd& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<cd> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const cd> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    CVector col(std::size_t c) const;

    std::span<cd> data() noexcept { return data_; }
    std::span<const cd> data() const noexcept { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    /// Keeps columns [first, first + count).
    CMatrix columns(std::size_t first, std::size_t count) const;

    double frobenius_norm() const noexcept;
    bool all_finite() const noexcept;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cd scale) noexcept;

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cd> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cd scale, CMatrix a);
CVector operator*(const CMatrix& a, std::span<const cd> x);

/// a^H * b without forming the adjoint.
CMatrix adjoint_times(const CMatrix& a, const CMatrix& b);

double norm2(std::span<const cd> x) noexcept;
cd dot(std::span<const cd> a, std::span<const cd> b) noexcept; ///< a^H b

/// Eigenpairs of a Hermitian matrix; values descending, columns of
/// `vectors` are the matching unit-norm eigenvectors.
struct EigenDecomposition {
    std::vector<double> values;
    CMatrix vectors;
};

/// Thin SVD: a = U diag(s) V^H with k = min(rows, cols) columns, s descending.
struct SvdResult {
    CMatrix u;
    std::vector<double> s;
    CMatrix v;
};

struct PencilEigenvalues {
    CVector values;
    /// Singular values of the first pencil matrix, descending. Exposed so
    /// callers can apply their own rank rule on top of the tolerance cut.
    std::vector<double> singular_values;
};

inline constexpr double kDefaultRankTol = 1e-8;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi eigensolver. Throws NonHermitian when
/// ||a - a^H||_F > tol * ||a||_F, NoConvergence after kJacobiMaxSweeps.
EigenDecomposition eig_hermitian(const CMatrix& a, double tol = 1e-10);

/// One-sided Jacobi SVD.
SvdResult svd(const CMatrix& a);

/// Moore-Penrose pseudoinverse; singular values below rank_tol * s_max are
/// treated as zero.
CMatrix pseudo_inverse(const CMatrix& a, double rank_tol = kDefaultRankTol);

/// Numerical rank of a descending singular value list.
std::size_t numerical_rank(std::span<const double> s, double rank_tol) noexcept;

/// Generalized eigenvalues of the pencil (h1, h2), computed as the
/// eigenvalues of pinv(h1) h2 restricted to the rank-r signal subspace of
/// h1. When `max_rank` is non-zero the subspace is further capped to it.
PencilEigenvalues pencil_generalized_eigs(const CMatrix& h1, const CMatrix& h2,
                                          double rank_tol = kDefaultRankTol,
                                          std::size_t max_rank = 0);

/// Eigenvalues of a general (non-Hermitian) square matrix via Hessenberg
/// reduction and shifted complex QR. Sized for pencil reductions, not for
/// large problems.
CVector eigvals_general(const CMatrix& a);

} // namespace jcs
