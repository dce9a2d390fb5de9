// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/beam.hpp"
#include "jcs/experiments.hpp"
#include "jcs/theory.hpp"

#include <ostream>
#include <span>
#include <string>

namespace jcs {

/// Locale-independent "%.10g"; nan and inf spelled as such.
std::string format_number(double v);

void write_resolution_csv(std::ostream& out, const ResolutionGrid& grid);
void write_rmse_csv(std::ostream& out, std::span<const RmseRow> rows);
void write_theory_csv(std::ostream& out, std::span<const TheoryRow> rows);
void write_leakage_csv(std::ostream& out, std::span<const LeakageRow> rows);
void write_pattern_csv(std::ostream& out, const FarfieldPattern& pattern);

} // namespace jcs
