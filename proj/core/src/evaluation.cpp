// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/evaluation.hpp"

#include "jcs/error.hpp"

#include <cmath>
#include <limits>

namespace jcs {

void AssociationParams::validate() const
{
    if (!(sigma_tau > 0.0) || !(sigma_theta > 0.0))
        throw Error(ErrorCode::InvalidInputs, "association scales must be positive");
}

namespace {

double distance(double tau, double theta_deg, double true_tau, double true_theta_deg, const AssociationParams& p)
{
    const double dt = (tau - true_tau) / p.sigma_tau;
    const double da = (theta_deg - true_theta_deg) / p.sigma_theta;
    return std::sqrt(dt * dt + da * da);
}

} // namespace

double association_distance(const Detection& z, const PathComponent& truth, const AssociationParams& p)
{
    return distance(z.tau, z.theta_deg, truth.tau, rad_to_deg(truth.theta), p);
}

TrialResult evaluate_trial(std::vector<Detection> detections, std::span<const PathComponent> truths,
                           const AssociationParams& p)
{
    p.validate();
    TrialResult r;
    r.detections = std::move(detections);
    r.assigned.assign(r.detections.size(), std::nullopt);
    r.matched.assign(truths.size(), std::nullopt);
    std::vector<double> best_d(truths.size(), std::numeric_limits<double>::infinity());

    for (std::size_t z = 0; z < r.detections.size(); ++z) {
        auto& det = r.detections[z];
        double nearest = std::numeric_limits<double>::infinity();
        std::size_t which = 0;
        for (std::size_t k = 0; k < truths.size(); ++k) {
            const double d = association_distance(det, truths[k], p);
            if (d < nearest) {
                nearest = d;
                which = k;
            }
        }
        if (nearest < 1.0) {
            r.assigned[z] = which;
            if (nearest < best_d[which]) {
                best_d[which] = nearest;
                r.matched[which] = z;
            }
            det.leaked = false;
            continue;
        }

        ++r.spurious_count;
        bool leak = false;
        for (std::size_t a = 0; a < truths.size() && !leak; ++a)
            for (std::size_t b = 0; b < truths.size() && !leak; ++b)
                if (a != b && distance(det.tau, det.theta_deg, truths[a].tau, rad_to_deg(truths[b].theta), p) < 1.0)
                    leak = true;
        det.leaked = leak;
        if (leak)
            ++r.leak_count;
    }

    r.resolved = !truths.empty();
    for (std::size_t k = 0; k < truths.size(); ++k) {
        if (!r.matched[k]) {
            r.resolved = false;
            continue;
        }
        const auto& det = r.detections[*r.matched[k]];
        const double dt = det.tau - truths[k].tau;
        const double da = det.theta_deg - rad_to_deg(truths[k].theta);
        r.sq_err_tau += dt * dt;
        r.sq_err_theta += da * da;
        ++r.n_matched;
    }
    return r;
}

} // namespace jcs
