// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/channel.hpp"

#include "jcs/error.hpp"
#include "jcs/rng.hpp"

#include <cmath>

namespace jcs {

void MultipathChannel::validate() const
{
    if (n_antennas < 1)
        throw Error(ErrorCode::InvalidInputs, "channel needs at least one antenna");
    if (n_subcarriers < 2)
        throw Error(ErrorCode::InvalidInputs, "channel needs at least two subcarriers");
    if (n_frames < 1)
        throw Error(ErrorCode::InvalidInputs, "channel needs at least one frame");
    if (!(subcarrier_spacing > 0.0))
        throw Error(ErrorCode::InvalidInputs, "subcarrier spacing must be positive");
    if (paths.empty())
        throw Error(ErrorCode::InvalidInputs, "channel has no paths");
    for (const auto& p : paths) {
        if (!(p.tau >= 0.0) || !std::isfinite(p.tau))
            throw Error(ErrorCode::InvalidInputs, "path delay must be finite and non-negative");
        if (!(p.theta > 0.0 && p.theta < kPi))
            throw Error(ErrorCode::InvalidInputs, "path azimuth must lie in (0, pi)");
        if (!(p.gain_scale >= 0.0) || !std::isfinite(p.gain_scale))
            throw Error(ErrorCode::InvalidInputs, "path power must be finite and non-negative");
    }
}

SubcarrierRange SubcarrierRange::wideband(std::size_t s)
{
    const int half_up = static_cast<int>((s + 1) / 2);
    const int half_down = static_cast<int>(s / 2);
    return {-half_up + 1, half_down - 1};
}

SubcarrierRange SubcarrierRange::narrowband(std::size_t s, std::size_t m)
{
    if (m == 0)
        throw Error(ErrorCode::InvalidInputs, "narrowband split needs m >= 1");
    const int half_up = static_cast<int>((s + 2 * m - 1) / (2 * m));
    const int half_down = static_cast<int>(s / (2 * m));
    return {-half_up + 1, half_down - 1};
}

CfrTensor::CfrTensor(std::size_t n_antennas, std::size_t n_frames, SubcarrierRange range)
    : n_antennas_(n_antennas), n_frames_(n_frames), range_(range), data_(n_antennas * n_frames * range.size())
{
}

FrameGains draw_frame_gains(const MultipathChannel& channel, std::uint64_t rng_seed)
{
    channel.validate();
    Rng rng(rng_seed);
    FrameGains g{CMatrix(channel.paths.size(), channel.n_frames)};
    for (std::size_t k = 0; k < channel.paths.size(); ++k) {
        const double var = channel.paths[k].gain_scale;
        for (std::size_t i = 0; i < channel.n_frames; ++i) {
            // Draw even for zero-power paths so the stream does not depend on the powers.
            const cd z = rng.complex_normal(1.0);
            g.alpha(k, i) = var == 0.0 ? cd{} : std::sqrt(var) * z;
        }
    }
    return g;
}

CfrTensor synthesize_cfr(const MultipathChannel& channel, const FrameGains& gains)
{
    channel.validate();
    const std::size_t k_paths = channel.paths.size();
    if (gains.alpha.rows() != k_paths || gains.alpha.cols() != channel.n_frames)
        throw Error(ErrorCode::ShapeMismatch, "gain matrix does not match the channel");

    const auto range = SubcarrierRange::wideband(channel.n_subcarriers);
    const std::size_t n_sc = range.size();

    std::vector<CVector> antenna_phase(k_paths, CVector(channel.n_antennas));
    std::vector<CVector> delay_phase(k_paths, CVector(n_sc));
    for (std::size_t k = 0; k < k_paths; ++k) {
        const auto& p = channel.paths[k];
        const double step = kPi * std::cos(p.theta);
        for (std::size_t n = 0; n < channel.n_antennas; ++n)
            antenna_phase[k][n] = std::polar(1.0, static_cast<double>(n) * step);
        for (std::size_t q = 0; q < n_sc; ++q)
            delay_phase[k][q] =
                std::polar(1.0, -2.0 * kPi * static_cast<double>(range.at(q)) * channel.subcarrier_spacing * p.tau);
    }

    CfrTensor out(channel.n_antennas, channel.n_frames, range);
    for (std::size_t n = 0; n < channel.n_antennas; ++n) {
        for (std::size_t i = 0; i < channel.n_frames; ++i) {
            for (std::size_t k = 0; k < k_paths; ++k) {
                const cd w = gains.alpha(k, i) * antenna_phase[k][n];
                for (std::size_t q = 0; q < n_sc; ++q)
                    out.at(n, i, range.at(q)) += w * delay_phase[k][q];
            }
        }
    }
    return out;
}

double noise_sigma_for_snr(const MultipathChannel& channel, double snr_linear)
{
    if (!(snr_linear > 0.0))
        throw Error(ErrorCode::NonPositiveSnr, "SNR must be positive");
    double power = 0.0;
    for (const auto& p : channel.paths)
        power += p.gain_scale;
    return std::sqrt(power / snr_linear);
}

CfrTensor add_awgn(CfrTensor cfr, double sigma, std::uint64_t rng_seed)
{
    if (!(sigma >= 0.0))
        throw Error(ErrorCode::InvalidInputs, "noise sigma must be non-negative");
    if (sigma == 0.0)
        return cfr;
    Rng rng(rng_seed);
    const double var = sigma * sigma;
    for (auto& z : cfr.data())
        z += rng.complex_normal(var);
    return cfr;
}

} // namespace jcs
