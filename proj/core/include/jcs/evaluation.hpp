// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/channel.hpp"
#include "jcs/pipeline.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jcs {

struct AssociationParams {
    double sigma_tau = 0.3 / kSpeedOfLight; ///< seconds
    double sigma_theta = 3.0;               ///< degrees

    void validate() const;
};

/// sqrt((dtau / sigma_tau)^2 + (dtheta / sigma_theta)^2). Associated iff < 1.
double association_distance(const Detection& z, const PathComponent& truth, const AssociationParams& p);

struct TrialResult {
    std::vector<Detection> detections;
    /// Truth index each detection was associated with, if any.
    std::vector<std::optional<std::size_t>> assigned;
    /// Per truth: closest associated detection, if any.
    std::vector<std::optional<std::size_t>> matched;
    std::size_t spurious_count = 0;
    std::size_t leak_count = 0;
    bool resolved = false;
    double sq_err_tau = 0.0;   ///< seconds^2, summed over matched truths
    double sq_err_theta = 0.0; ///< degrees^2, summed over matched truths
    std::size_t n_matched = 0;
};

/// Greedy association: every detection goes to its nearest truth (lowest
/// index on ties) when that distance is below one. A spurious detection is
/// a leak when it lies within distance one of (tau_a, theta_b), a != b;
/// every detection gets its `leaked` flag set.
TrialResult evaluate_trial(std::vector<Detection> detections, std::span<const PathComponent> truths,
                           const AssociationParams& p);

} // namespace jcs
