// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/pipeline.hpp"

#include "jcs/error.hpp"

#include <algorithm>
#include <cmath>

namespace jcs {

void PipelineConfig::validate() const
{
    if (!(rho > 0.0))
        throw Error(ErrorCode::InvalidInputs, "rho must be positive");
    if (!(merge_deg >= 0.0))
        throw Error(ErrorCode::InvalidInputs, "merge_deg must be non-negative");
}

namespace {

// e^{j 2 pi tau s df} for s over the range.
CVector delay_compensation(SubcarrierRange range, double tau, double delta_f)
{
    CVector out(range.size());
    const double w = 2.0 * kPi * tau * delta_f;
    for (std::size_t q = 0; q < out.size(); ++q)
        out[q] = std::polar(1.0, w * static_cast<double>(range.at(q)));
    return out;
}

} // namespace

PathCoefficients estimate_path_coefficients(const AnalogEstimate& h_a, const ToaEstimates& taus, double delta_f)
{
    if (taus.taus.empty())
        throw Error(ErrorCode::InvalidInputs, "no delays to estimate coefficients for");
    const std::size_t f = h_a.n_frames();
    PathCoefficients out{CMatrix(taus.taus.size(), f)};
    for (std::size_t l = 0; l < taus.taus.size(); ++l) {
        const CVector e = delay_compensation(h_a.range, taus.taus[l], delta_f);
        for (std::size_t i = 0; i < f; ++i) {
            cd acc{};
            const auto row = h_a.h_a.row(i);
            for (std::size_t q = 0; q < e.size(); ++q)
                acc += e[q] * row[q];
            out.alpha_hat(l, i) = acc;
        }
    }
    return out;
}

CombinedDigitalChannel amplify_path(const DigitalEstimateSet& h_d, const PathCoefficients& coeffs, std::size_t path,
                                    double tau, double delta_f)
{
    if (path >= coeffs.alpha_hat.rows())
        throw Error(ErrorCode::InvalidInputs, "path index out of range");
    if (coeffs.alpha_hat.cols() != h_d.n_frames())
        throw Error(ErrorCode::ShapeMismatch, "coefficient frames differ from digital frames");
    const auto range = h_d.range();
    const CVector e = delay_compensation(range, tau, delta_f);
    CombinedDigitalChannel out{CVector(h_d.size())};
    for (std::size_t m = 0; m < h_d.size(); ++m) {
        cd acc{};
        for (std::size_t i = 0; i < h_d.n_frames(); ++i) {
            const cd a = std::conj(coeffs.alpha_hat(path, i));
            cd frame_sum{};
            for (std::size_t q = 0; q < e.size(); ++q)
                frame_sum += e[q] * h_d.at(m, i, range.at(q));
            acc += a * frame_sum;
        }
        out.h_bar[m] = acc;
    }
    return out;
}

std::vector<Detection> amplitude_and_threshold(const CombinedDigitalChannel& h_bar, const SpatialFrequencies& freqs,
                                               double rho, double tau, double merge_deg)
{
    if (!(rho > 0.0))
        throw Error(ErrorCode::InvalidInputs, "rho must be positive");
    const auto& h = h_bar.h_bar;
    if (h.empty())
        return {};
    const double thr = rho * std::sqrt(norm2(h) / static_cast<double>(h.size()));

    std::vector<Detection> kept;
    for (const double phi : freqs.phase_steps) {
        cd a{};
        for (std::size_t d = 0; d < h.size(); ++d)
            a += h[d] * std::polar(1.0, -phi * static_cast<double>(d));
        if (std::abs(a) > thr)
            kept.push_back({tau, phase_step_to_angle(phi), a, std::nullopt});
    }

    // Strongest first, then drop near-duplicates of an already kept angle.
    std::stable_sort(kept.begin(), kept.end(),
                     [](const Detection& x, const Detection& y) { return std::abs(x.amplitude) > std::abs(y.amplitude); });
    std::vector<Detection> out;
    for (const auto& det : kept) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Detection& o) {
            return std::abs(o.theta_deg - det.theta_deg) < merge_deg;
        });
        if (!dup)
            out.push_back(det);
    }
    return out;
}

std::vector<Detection> run_pipeline(const AnalogEstimate& h_a, const DigitalEstimateSet& h_d,
                                    const PipelineConfig& cfg, double delta_f)
{
    cfg.validate();
    if (h_a.n_frames() != h_d.n_frames())
        throw Error(ErrorCode::ShapeMismatch, "analog and digital estimates cover different frames");

    ToaEstimates toas;
    try {
        toas = music_toa(h_a, cfg.music, delta_f).toas;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoPeaksFound)
            throw;
    }
    if (toas.taus.empty())
        return {};

    const PathCoefficients coeffs = estimate_path_coefficients(h_a, toas, delta_f);
    std::vector<Detection> out;
    for (std::size_t l = 0; l < toas.taus.size(); ++l) {
        const CombinedDigitalChannel h_bar = amplify_path(h_d, coeffs, l, toas.taus[l], delta_f);
        SpatialFrequencies freqs;
        try {
            freqs = matrix_pencil(h_bar.h_bar, cfg.pencil);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegeneratePencil)
                throw;
            continue;
        }
        auto dets = amplitude_and_threshold(h_bar, freqs, cfg.rho, toas.taus[l], cfg.merge_deg);
        out.insert(out.end(), dets.begin(), dets.end());
    }
    return out;
}

} // namespace jcs
