// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/error.hpp"
#include "jcs/linalg.hpp"

#include <cmath>
#include <limits>

namespace jcs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterPerEigenvalue = 60;

void reduce_to_hessenberg(CMatrix& h)
{
    const std::size_t n = h.rows();
    CVector v;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        v.assign(len, cd{});
        for (std::size_t i = 0; i < len; ++i)
            v[i] = h(k + 1 + i, k);
        const double alpha = std::sqrt(norm2(v));
        if (alpha == 0.0)
            continue;
        const cd x0 = v[0];
        const cd phase = std::abs(x0) == 0.0 ? cd{1.0} : x0 / std::abs(x0);
        v[0] += phase * alpha;
        const double vv = norm2(v);
        if (vv == 0.0)
            continue;
        const double scale = 2.0 / vv;

        for (std::size_t j = k; j < n; ++j) {
            cd s{};
            for (std::size_t i = 0; i < len; ++i)
                s += std::conj(v[i]) * h(k + 1 + i, j);
            s *= scale;
            for (std::size_t i = 0; i < len; ++i)
                h(k + 1 + i, j) -= v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            cd s{};
            for (std::size_t j = 0; j < len; ++j)
                s += h(i, k + 1 + j) * v[j];
            s *= scale;
            for (std::size_t j = 0; j < len; ++j)
                h(i, k + 1 + j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i)
            h(i, k) = 0.0;
    }
}

// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
cd wilkinson_shift(const CMatrix& h, std::size_t hi)
{
    const cd a = h(hi - 1, hi - 1);
    const cd b = h(hi - 1, hi);
    const cd c = h(hi, hi - 1);
    const cd d = h(hi, hi);
    const cd half_tr = 0.5 * (a + d);
    const cd disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const cd m1 = half_tr + disc;
    const cd m2 = half_tr - disc;
    return std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
}

struct Givens {
    double c;
    cd s;
};

// G = [[c, s], [-conj(s), c]] maps (x, y) to (r, 0).
Givens make_givens(cd x, cd y)
{
    const double ax = std::abs(x);
    const double r = std::hypot(ax, std::abs(y));
    if (r == 0.0)
        return {1.0, cd{}};
    if (ax == 0.0)
        return {0.0, cd{1.0}};
    return {ax / r, (x / ax) * std::conj(y) / r};
}

} // namespace

CVector eigvals_general(const CMatrix& a)
{
    if (!a.square())
        throw Error(ErrorCode::ShapeMismatch, "eigvals_general needs a square matrix");
    if (!a.all_finite())
        throw Error(ErrorCode::InvalidInputs, "eigvals_general input has non-finite entries");
    const std::size_t n = a.rows();
    if (n == 0)
        return {};

    CMatrix h = a;
    reduce_to_hessenberg(h);
    const double scale_floor = std::numeric_limits<double>::min() / kEps;

    CVector values(n);
    std::vector<Givens> rot(n);
    std::size_t hi = n - 1;
    int iter = 0;
    while (true) {
        if (hi == 0) {
            values[0] = h(0, 0);
            break;
        }
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (sub <= kEps * diag || sub <= scale_floor) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            values[hi] = h(hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (++iter > kMaxIterPerEigenvalue)
            throw Error(ErrorCode::NoConvergence, "shifted QR did not converge");

        cd mu = wilkinson_shift(h, hi);
        if (iter % 11 == 0)
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1)); // exceptional shift

        for (std::size_t i = lo; i <= hi; ++i)
            h(i, i) -= mu;
        for (std::size_t k = lo; k < hi; ++k) {
            rot[k] = make_givens(h(k, k), h(k + 1, k));
            const auto [c, s] = rot[k];
            for (std::size_t j = k; j <= hi; ++j) {
                const cd t1 = h(k, j);
                const cd t2 = h(k + 1, j);
                h(k, j) = c * t1 + s * t2;
                h(k + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const auto [c, s] = rot[k];
            const std::size_t last = std::min(k + 1, hi);
            for (std::size_t i = lo; i <= last; ++i) {
                const cd t1 = h(i, k);
                const cd t2 = h(i, k + 1);
                h(i, k) = c * t1 + std::conj(s) * t2;
                h(i, k + 1) = -s * t1 + c * t2;
            }
        }
        for (std::size_t i = lo; i <= hi; ++i)
            h(i, i) += mu;
    }
    return values;
}

} // namespace jcs
