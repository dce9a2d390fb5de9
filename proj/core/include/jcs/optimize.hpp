// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include <cmath>

namespace jcs {

/// Golden-section search for a minimum of f on [lo, hi]. Returns the best
/// point evaluated, which includes the bracket midpoint, so a caller that
/// brackets a grid minimum never gets a worse answer than the grid gave.
template <class F>
double golden_section_min(F&& f, double lo, double hi, int iterations = 60)
{
    constexpr double kInvPhi = 0.6180339887498949;
    double best_x = 0.5 * (lo + hi);
    double best_f = f(best_x);
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < iterations; ++it) {
        if (f1 < best_f) {
            best_f = f1;
            best_x = x1;
        }
        if (f2 < best_f) {
            best_f = f2;
            best_x = x2;
        }
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        }
    }
    if (f1 < best_f)
        best_x = x1;
    else if (f2 < best_f)
        best_x = x2;
    return best_x;
}

} // namespace jcs
