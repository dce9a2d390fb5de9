// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/jcs.hpp"

#include <Eigen/Dense>

#include <random>

namespace jcs::test {

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    CMatrix a(rows, cols);
    for (auto& z : a.data())
        z = {n(rng), n(rng)};
    return a;
}

inline CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng)
{
    const CMatrix b = random_matrix(n, n, rng);
    CMatrix a = b + b.adjoint();
    return a;
}

inline Eigen::MatrixXcd to_eigen(const CMatrix& a)
{
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(r, c);
    return m;
}

inline CVector exponentials(std::size_t m, std::initializer_list<std::pair<cd, double>> terms)
{
    CVector h(m);
    for (std::size_t k = 0; k < m; ++k)
        for (const auto& [c, phi] : terms)
            h[k] += c * std::polar(1.0, phi * static_cast<double>(k));
    return h;
}

inline MultipathChannel small_channel(std::vector<PathComponent> paths, std::size_t n = 16, std::size_t s = 128,
                                      std::size_t f = 10)
{
    MultipathChannel ch;
    ch.paths = std::move(paths);
    ch.n_antennas = n;
    ch.n_subcarriers = s;
    ch.subcarrier_spacing = 400e6 / static_cast<double>(s);
    ch.n_frames = f;
    return ch;
}

inline double meters(double m) { return m / kSpeedOfLight; }

} // namespace jcs::test
