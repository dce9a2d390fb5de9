// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace jcs {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

/// One plane wave: delay in seconds, azimuth in radians, relative power.
struct PathComponent {
    double tau = 0.0;
    double theta = kPi / 2.0;
    double gain_scale = 1.0;
};

struct MultipathChannel {
    std::vector<PathComponent> paths;
    std::size_t n_antennas = 16;
    std::size_t n_subcarriers = 128;
    double subcarrier_spacing = 3.125e6;
    std::size_t n_frames = 10;

    double bandwidth() const noexcept { return static_cast<double>(n_subcarriers) * subcarrier_spacing; }
    /// Throws InvalidInputs when a field invariant is violated.
    void validate() const;
};

/// Contiguous range of signed subcarrier indices [first, last].
struct SubcarrierRange {
    int first = 0;
    int last = -1;

    std::size_t size() const noexcept { return last >= first ? static_cast<std::size_t>(last - first + 1) : 0; }
    bool contains(int s) const noexcept { return s >= first && s <= last; }
    std::size_t offset(int s) const noexcept { return static_cast<std::size_t>(s - first); }
    int at(std::size_t k) const noexcept { return first + static_cast<int>(k); }

    /// {-ceil(S/2)+1, ..., floor(S/2)-1}: S-1 usable subcarriers.
    static SubcarrierRange wideband(std::size_t s);
    /// Same rule applied to S/M: {-ceil(S/2M)+1, ..., floor(S/2M)-1}.
    static SubcarrierRange narrowband(std::size_t s, std::size_t m);

    friend bool operator==(const SubcarrierRange&, const SubcarrierRange&) = default;
};

/// alpha(k, i): gain of path k in frame i.
struct FrameGains {
    CMatrix alpha;
};

/// Per-antenna CFR samples, indexed (antenna n, frame i, subcarrier s).
class CfrTensor {
public:
    CfrTensor() = default;
    CfrTensor(std::size_t n_antennas, std::size_t n_frames, SubcarrierRange range);

    std::size_t n_antennas() const noexcept { return n_antennas_; }
    std::size_t n_frames() const noexcept { return n_frames_; }
    const SubcarrierRange& range() const noexcept { return range_; }

    cd& at(std::size_t n, std::size_t i, int s) noexcept { return data_[index(n, i, s)]; }
    const cd& at(std::size_t n, std::size_t i, int s) const noexcept { return data_[index(n, i, s)]; }

    std::span<cd> data() noexcept { return data_; }
    std::span<const cd> data() const noexcept { return data_; }

    friend bool operator==(const CfrTensor&, const CfrTensor&) = default;

private:
    std::size_t index(std::size_t n, std::size_t i, int s) const noexcept
    {
        return (n * n_frames_ + i) * range_.size() + range_.offset(s);
    }

    std::size_t n_antennas_ = 0;
    std::size_t n_frames_ = 0;
    SubcarrierRange range_;
    std::vector<cd> data_;
};

/// i.i.d. CN(0, gain_scale_k) gains for every path and frame.
FrameGains draw_frame_gains(const MultipathChannel& channel, std::uint64_t rng_seed);

/// H_n(i, s) = sum_k alpha(k, i) e^{j n pi cos(theta_k)} e^{-j 2 pi s df tau_k}
/// over the wideband subcarrier range.
CfrTensor synthesize_cfr(const MultipathChannel& channel, const FrameGains& gains);

/// sigma with sigma^2 = (sum_k gain_scale_k) / snr_linear.
double noise_sigma_for_snr(const MultipathChannel& channel, double snr_linear);

/// Adds CN(0, sigma^2) to every entry.
CfrTensor add_awgn(CfrTensor cfr, double sigma, std::uint64_t rng_seed);

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

} // namespace jcs
