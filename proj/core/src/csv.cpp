// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/csv.hpp"

#include <cmath>
#include <cstdio>

namespace jcs {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_resolution_csv(std::ostream& out, const ResolutionGrid& grid)
{
    out << "delta_l_m,delta_theta_deg,prob\n";
    for (std::size_t l = 0; l < grid.delta_l_values.size(); ++l)
        for (std::size_t t = 0; t < grid.delta_theta_values.size(); ++t)
            out << format_number(grid.delta_l_values[l]) << ',' << format_number(grid.delta_theta_values[t]) << ','
                << format_number(grid.at(l, t)) << '\n';
}

void write_rmse_csv(std::ostream& out, std::span<const RmseRow> rows)
{
    out << "gamma0_db,method,range_rmse_mm,angle_rmse_deg\n";
    for (const auto& r : rows)
        out << format_number(r.gamma0_db) << ',' << r.method << ',' << format_number(r.range_rmse_mm) << ','
            << format_number(r.angle_rmse_deg) << '\n';
}

void write_theory_csv(std::ostream& out, std::span<const TheoryRow> rows)
{
    out << "arch,n_prime,delta_t_ns,delta_omega_mrad\n";
    for (const auto& r : rows)
        out << r.arch << ',' << r.n_prime << ',' << format_number(r.delta_t_ns) << ','
            << format_number(r.delta_omega_mrad) << '\n';
}

void write_leakage_csv(std::ostream& out, std::span<const LeakageRow> rows)
{
    out << "grid,prob_any_leak,avg_leaks\n";
    for (const auto& r : rows)
        out << r.grid << ',' << format_number(r.prob_any_leak) << ',' << format_number(r.avg_leaks) << '\n';
}

void write_pattern_csv(std::ostream& out, const FarfieldPattern& pattern)
{
    out << "phi_deg,af_real,af_imag,gain_db\n";
    for (std::size_t k = 0; k < pattern.phi_grid.size(); ++k)
        out << format_number(pattern.phi_grid[k]) << ',' << format_number(pattern.af[k].real()) << ','
            << format_number(pattern.af[k].imag()) << ',' << format_number(pattern.gain_db[k]) << '\n';
}

} // namespace jcs
