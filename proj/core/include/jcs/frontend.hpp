// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/channel.hpp"
#include "jcs/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace jcs {

struct BeamWeights {
    CVector beta;
    int frame_tag = 0;

    /// Throws InvalidInputs for empty, non-finite or all-zero weights.
    void validate() const;
};

/// Wideband estimate after the analog combiner; h_a(i, q) is frame i at
/// subcarrier range.at(q).
struct AnalogEstimate {
    CMatrix h_a;
    SubcarrierRange range;

    std::size_t n_frames() const noexcept { return h_a.rows(); }
};

/// Narrowband per-antenna estimates for the multiplexed antenna set.
class DigitalEstimateSet {
public:
    DigitalEstimateSet() = default;
    DigitalEstimateSet(std::vector<std::size_t> antenna_set, std::size_t n_frames, SubcarrierRange range);

    const std::vector<std::size_t>& antenna_set() const noexcept { return antenna_set_; }
    std::size_t size() const noexcept { return antenna_set_.size(); }
    std::size_t n_frames() const noexcept { return n_frames_; }
    const SubcarrierRange& range() const noexcept { return range_; }

    /// Entry for the j-th antenna of the set (not the antenna index itself).
    cd& at(std::size_t j, std::size_t i, int s) noexcept { return data_[index(j, i, s)]; }
    const cd& at(std::size_t j, std::size_t i, int s) const noexcept { return data_[index(j, i, s)]; }

    std::span<cd> data() noexcept { return data_; }
    std::span<const cd> data() const noexcept { return data_; }

private:
    std::size_t index(std::size_t j, std::size_t i, int s) const noexcept
    {
        return (j * n_frames_ + i) * range_.size() + range_.offset(s);
    }

    std::vector<std::size_t> antenna_set_;
    std::size_t n_frames_ = 0;
    SubcarrierRange range_;
    std::vector<cd> data_;
};

/// Where the analog-path noise enters. PerAntenna models receiver noise of
/// variance sigma^2 on every element before the combiner, so the combined
/// noise has variance sigma^2 ||beta||^2. AtCombinerOutput adds sigma^2 after.
enum class AnalogNoise { PerAntenna, AtCombinerOutput };

/// H_A(i, s) = sum_n beta_{n,i} H_n(i, s) + w. `weights_per_frame` holds one
/// beam per frame or a single beam used for all frames.
AnalogEstimate analog_estimate(const CfrTensor& cfr, std::span<const BeamWeights> weights_per_frame, double sigma,
                               std::uint64_t rng_seed, AnalogNoise noise = AnalogNoise::PerAntenna);

/// H_m(i, s) + w on the narrowband subcarrier range of S / m.
DigitalEstimateSet digital_estimates(const CfrTensor& cfr, std::span<const std::size_t> antenna_set, std::size_t m,
                                     double sigma, std::uint64_t rng_seed);

/// Antenna served by ADC sample s: antenna_set[s mod M].
struct MuxSchedule {
    std::vector<std::size_t> antenna_set;

    std::size_t antenna_for_sample(std::size_t s) const { return antenna_set.at(s % antenna_set.size()); }
};

/// Stream j receives samples j, M + j, 2M + j, ...
std::vector<CVector> demultiplex(std::span<const cd> samples, std::size_t m);
/// Inverse of demultiplex.
CVector multiplex(const std::vector<CVector>& streams);

/// beta_m <- mu beta_m + (1 - mu) conj(H_m(frame, 0)) for every m in the
/// digital antenna set; other antennas keep their weights.
BeamWeights update_beam_mrc_iir(const BeamWeights& prev, const DigitalEstimateSet& digital, std::size_t frame,
                                double mu);

enum class Architecture { Analog, Proposed, FullMimo };

/// Aggregate ADC rate in samples/s for an n-antenna receiver of bandwidth b_a.
double aggregate_sampling_rate(Architecture arch, std::size_t n, double b_a);

/// Fully digital front-end: every antenna, every subcarrier, CN(0, sigma^2).
CfrTensor full_digital_estimate(const CfrTensor& cfr, double sigma, std::uint64_t rng_seed);

/// Classical array with n_prime antennas and 2S/n_prime subcarriers at the
/// same spacing (same aggregate sampling rate as the proposed receiver).
MultipathChannel equivalent_classical_channel(const MultipathChannel& base, std::size_t n_prime);

} // namespace jcs
