// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/linalg.hpp"

#include "jcs/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace jcs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::ShapeMismatch, what);
}

// Smaller root of t^2 + 2 zeta t - 1 = 0; the rotation angle that zeroes the
// off-diagonal of [[a, b], [b, d]] with zeta = (d - a) / (2b).
double jacobi_tangent(double zeta)
{
    if (!std::isfinite(zeta))
        return 0.0;
    const double sign = zeta >= 0.0 ? 1.0 : -1.0;
    return sign / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
}

std::vector<std::size_t> descending_order(std::span<const double> v)
{
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
}

} // namespace

// ---------------------------------------------------------------------------
// CMatrix

CMatrix::CMatrix(std::size_t rows, std::size_t cols, cd fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cd>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw Error(ErrorCode::ShapeMismatch, "ragged initializer list");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n)
{
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values)
{
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        m(i, i) = values[i];
    return m;
}

CMatrix CMatrix::column(std::span<const cd> values)
{
    CMatrix m(values.size(), 1);
    std::copy(values.begin(), values.end(), m.data_.begin());
    return m;
}

CVector CMatrix::col(std::size_t c) const
{
    CVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

CMatrix CMatrix::adjoint() const
{
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix CMatrix::transpose() const
{
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = (*this)(r, c);
    return out;
}

CMatrix CMatrix::columns(std::size_t first, std::size_t count) const
{
    if (first + count > cols_)
        throw Error(ErrorCode::ShapeMismatch, "column slice out of range");
    CMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < count; ++c)
            out(r, c) = (*this)(r, first + c);
    return out;
}

double CMatrix::frobenius_norm() const noexcept { return std::sqrt(norm2(data_)); }

bool CMatrix::all_finite() const noexcept
{
    return std::all_of(data_.begin(), data_.end(),
                       [](const cd& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& other)
{
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other)
{
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cd scale) noexcept
{
    for (auto& z : data_)
        z *= scale;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorCode::ShapeMismatch, "matrix product");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto orow = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cd aik = a(i, k);
            if (aik == cd{})
                continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                orow[j] += aik * brow[j];
        }
    }
    return out;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cd scale, CMatrix a) { return a *= scale; }

CVector operator*(const CMatrix& a, std::span<const cd> x)
{
    if (a.cols() != x.size())
        throw Error(ErrorCode::ShapeMismatch, "matrix-vector product");
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cd acc{};
        auto arow = a.row(i);
        for (std::size_t j = 0; j < x.size(); ++j)
            acc += arow[j] * x[j];
        out[i] = acc;
    }
    return out;
}

CMatrix adjoint_times(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != b.rows())
        throw Error(ErrorCode::ShapeMismatch, "adjoint product");
    CMatrix out(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        auto arow = a.row(k);
        auto brow = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const cd aki = std::conj(arow[i]);
            auto orow = out.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j)
                orow[j] += aki * brow[j];
        }
    }
    return out;
}

double norm2(std::span<const cd> x) noexcept
{
    double acc = 0.0;
    for (const auto& z : x)
        acc += std::norm(z);
    return acc;
}

cd dot(std::span<const cd> a, std::span<const cd> b) noexcept
{
    cd acc{};
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

EigenDecomposition eig_hermitian(const CMatrix& input, double tol)
{
    if (!input.square())
        throw Error(ErrorCode::ShapeMismatch, "eig_hermitian needs a square matrix");
    if (!input.all_finite())
        throw Error(ErrorCode::InvalidInputs, "eig_hermitian input has non-finite entries");

    const std::size_t n = input.rows();
    const double norm_a = input.frobenius_norm();
    {
        double asym = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                asym += std::norm(input(i, j) - std::conj(input(j, i)));
        if (std::sqrt(asym) > tol * norm_a)
            throw Error(ErrorCode::NonHermitian, "matrix is not Hermitian within tolerance");
    }

    CMatrix a = input;
    for (std::size_t i = 0; i < n; ++i)
        a(i, i) = a(i, i).real();
    CMatrix v = CMatrix::identity(n);

    const double stop = static_cast<double>(std::max<std::size_t>(n, 1)) * kEps * norm_a;
    bool converged = norm_a == 0.0;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += std::norm(a(p, q));
        off = std::sqrt(2.0 * off);
        if (off <= stop) {
            converged = true;
            break;
        }

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cd g = a(p, q);
                const double mag = std::abs(g);
                if (mag == 0.0)
                    continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Below rounding level of both diagonal entries: drop it.
                if (sweep > 3 && mag <= 0.5 * kEps * std::min(std::abs(app), std::abs(aqq))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const cd phase = g / mag;
                const double t = jacobi_tangent((aqq - app) / (2.0 * mag));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cd s_conj_phase = s * std::conj(phase);
                const cd s_phase = s * phase;
                const cd c_conj_phase = c * std::conj(phase);
                const cd c_phase = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const cd akp = a(k, p);
                    const cd akq = a(k, q);
                    a(k, p) = c * akp - s_conj_phase * akq;
                    a(k, q) = s * akp + c_conj_phase * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cd apk = a(p, k);
                    const cd aqk = a(q, k);
                    a(p, k) = c * apk - s_phase * aqk;
                    a(q, k) = s * apk + c_phase * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const cd vkp = v(k, p);
                    const cd vkq = v(k, q);
                    v(k, p) = c * vkp - s_conj_phase * vkq;
                    v(k, q) = s * vkp + c_conj_phase * vkq;
                }
            }
        }
    }
    if (!converged)
        throw Error(ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = a(i, i).real();
    const auto order = descending_order(diag);

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.values[j] = diag[src];
        double nrm = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            nrm += std::norm(v(k, src));
        nrm = std::sqrt(nrm);
        for (std::size_t k = 0; k < n; ++k)
            out.vectors(k, j) = v(k, src) / nrm;
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVD (one-sided Jacobi on the columns of the taller orientation)

namespace {

SvdResult svd_tall(const CMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    std::vector<CVector> w(n, CVector(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[j][i] = a(i, j);
    std::vector<CVector> v(n, CVector(n));
    for (std::size_t j = 0; j < n; ++j)
        v[j][j] = 1.0;

    const double tol = kEps * static_cast<double>(std::max<std::size_t>(m, 1));
    // Columns that rotation has driven to roundoff level carry no signal;
    // their mutual angle is noise and would never settle below `tol`.
    double total = 0.0;
    for (const auto& col : w)
        total += norm2(col);
    const double floor = kEps * kEps * total;
    bool converged = false;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double alpha = norm2(w[i]);
                const double beta = norm2(w[j]);
                const cd gamma = dot(w[i], w[j]);
                const double mag = std::abs(gamma);
                if (mag <= floor || mag <= tol * std::sqrt(alpha * beta))
                    continue;
                rotated = true;
                const cd conj_phase = std::conj(gamma / mag);
                const double t = jacobi_tangent((beta - alpha) / (2.0 * mag));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    const cd wi = w[i][k];
                    const cd wj = w[j][k] * conj_phase;
                    w[i][k] = c * wi - s * wj;
                    w[j][k] = s * wi + c * wj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cd vi = v[i][k];
                    const cd vj = v[j][k] * conj_phase;
                    v[i][k] = c * vi - s * vj;
                    v[j][k] = s * vi + c * vj;
                }
            }
        }
        converged = !rotated;
    }
    if (!converged)
        throw Error(ErrorCode::NoConvergence, "one-sided Jacobi SVD did not converge");

    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j)
        sv[j] = std::sqrt(norm2(w[j]));
    const auto order = descending_order(sv);

    SvdResult out;
    out.s.resize(n);
    out.u = CMatrix(m, n);
    out.v = CMatrix(n, n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        out.s[jj] = sv[j];
        if (sv[j] > 0.0)
            for (std::size_t k = 0; k < m; ++k)
                out.u(k, jj) = w[j][k] / sv[j];
        for (std::size_t k = 0; k < n; ++k)
            out.v(k, jj) = v[j][k];
    }
    return out;
}

} // namespace

SvdResult svd(const CMatrix& a)
{
    if (a.empty())
        throw Error(ErrorCode::InvalidInputs, "svd of an empty matrix");
    if (!a.all_finite())
        throw Error(ErrorCode::InvalidInputs, "svd input has non-finite entries");
    if (a.rows() >= a.cols())
        return svd_tall(a);
    SvdResult t = svd_tall(a.adjoint());
    return SvdResult{std::move(t.v), std::move(t.s), std::move(t.u)};
}

std::size_t numerical_rank(std::span<const double> s, double rank_tol) noexcept
{
    if (s.empty() || !(s.front() > 0.0))
        return 0;
    const double cut = rank_tol * s.front();
    std::size_t r = 0;
    while (r < s.size() && s[r] > cut)
        ++r;
    return r;
}

CMatrix pseudo_inverse(const CMatrix& a, double rank_tol)
{
    const SvdResult d = svd(a);
    const std::size_t r = numerical_rank(d.s, rank_tol);
    CMatrix out(a.cols(), a.rows());
    for (std::size_t k = 0; k < r; ++k) {
        const double inv = 1.0 / d.s[k];
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const cd vik = d.v(i, k) * inv;
            auto orow = out.row(i);
            for (std::size_t j = 0; j < a.rows(); ++j)
                orow[j] += vik * std::conj(d.u(j, k));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix pencil

PencilEigenvalues pencil_generalized_eigs(const CMatrix& h1, const CMatrix& h2, double rank_tol, std::size_t max_rank)
{
    require_same_shape(h1, h2, "pencil matrices must share a shape");
    const SvdResult d = svd(h1);
    std::size_t r = numerical_rank(d.s, rank_tol);
    if (r == 0)
        throw Error(ErrorCode::DegeneratePencil, "first pencil matrix is numerically zero");
    if (max_rank != 0)
        r = std::min(r, max_rank);

    // Non-zero eigenvalues of pinv(h1) h2 = V_r S_r^-1 U_r^H h2 equal those
    // of the r x r matrix S_r^-1 U_r^H h2 V_r.
    const CMatrix ur = d.u.columns(0, r);
    const CMatrix vr = d.v.columns(0, r);
    CMatrix z = adjoint_times(ur, h2 * vr);
    for (std::size_t i = 0; i < r; ++i) {
        const double inv = 1.0 / d.s[i];
        for (auto& x : z.row(i))
            x *= inv;
    }

    PencilEigenvalues out;
    out.values = eigvals_general(z);
    out.singular_values = d.s;
    return out;
}

} // namespace jcs
