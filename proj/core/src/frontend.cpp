// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/frontend.hpp"

#include "jcs/error.hpp"
#include "jcs/rng.hpp"

#include <algorithm>
#include <cmath>

namespace jcs {

void BeamWeights::validate() const
{
    if (beta.empty())
        throw Error(ErrorCode::InvalidInputs, "beam has no weights");
    bool any = false;
    for (const auto& b : beta) {
        if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
            throw Error(ErrorCode::InvalidInputs, "beam weight is not finite");
        any = any || b != cd{};
    }
    if (!any)
        throw Error(ErrorCode::InvalidInputs, "beam weights are all zero");
}

DigitalEstimateSet::DigitalEstimateSet(std::vector<std::size_t> antenna_set, std::size_t n_frames,
                                       SubcarrierRange range)
    : antenna_set_(std::move(antenna_set)), n_frames_(n_frames), range_(range),
      data_(antenna_set_.size() * n_frames * range.size())
{
}

AnalogEstimate analog_estimate(const CfrTensor& cfr, std::span<const BeamWeights> weights_per_frame, double sigma,
                               std::uint64_t rng_seed, AnalogNoise noise)
{
    const std::size_t f = cfr.n_frames();
    const std::size_t n_ant = cfr.n_antennas();
    if (weights_per_frame.size() != 1 && weights_per_frame.size() != f)
        throw Error(ErrorCode::ShapeMismatch, "need one beam per frame or a single beam");
    for (const auto& w : weights_per_frame) {
        w.validate();
        if (w.beta.size() != n_ant)
            throw Error(ErrorCode::ShapeMismatch, "beam length differs from antenna count");
    }
    if (!(sigma >= 0.0))
        throw Error(ErrorCode::InvalidInputs, "noise sigma must be non-negative");

    const auto range = cfr.range();
    AnalogEstimate out{CMatrix(f, range.size()), range};
    Rng rng(rng_seed);
    for (std::size_t i = 0; i < f; ++i) {
        const auto& beta = weights_per_frame[weights_per_frame.size() == 1 ? 0 : i].beta;
        auto row = out.h_a.row(i);
        for (std::size_t n = 0; n < n_ant; ++n)
            for (std::size_t q = 0; q < row.size(); ++q)
                row[q] += beta[n] * cfr.at(n, i, range.at(q));
        if (sigma > 0.0) {
            const double scale = noise == AnalogNoise::PerAntenna ? std::sqrt(norm2(beta)) : 1.0;
            const double sd = sigma * scale;
            for (auto& z : row)
                z += sd * rng.complex_normal(1.0);
        }
    }
    return out;
}

DigitalEstimateSet digital_estimates(const CfrTensor& cfr, std::span<const std::size_t> antenna_set, std::size_t m,
                                     double sigma, std::uint64_t rng_seed)
{
    if (antenna_set.size() != m || m == 0)
        throw Error(ErrorCode::BadAntennaSet, "antenna set size must equal m >= 1");
    for (std::size_t j = 0; j < antenna_set.size(); ++j) {
        if (antenna_set[j] >= cfr.n_antennas())
            throw Error(ErrorCode::BadAntennaSet, "antenna index out of range");
        if (std::find(antenna_set.begin(), antenna_set.begin() + static_cast<std::ptrdiff_t>(j), antenna_set[j]) !=
            antenna_set.begin() + static_cast<std::ptrdiff_t>(j))
            throw Error(ErrorCode::BadAntennaSet, "antenna listed twice");
    }
    if (!(sigma >= 0.0))
        throw Error(ErrorCode::InvalidInputs, "noise sigma must be non-negative");

    // S is recovered from the wideband range: S - 1 usable subcarriers.
    const std::size_t s_total = cfr.range().size() + 1;
    const auto range = SubcarrierRange::narrowband(s_total, m);
    DigitalEstimateSet out({antenna_set.begin(), antenna_set.end()}, cfr.n_frames(), range);
    Rng rng(rng_seed);
    const double var = sigma * sigma;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < cfr.n_frames(); ++i)
            for (int s = range.first; s <= range.last; ++s) {
                cd v = cfr.at(antenna_set[j], i, s);
                if (sigma > 0.0)
                    v += rng.complex_normal(var);
                out.at(j, i, s) = v;
            }
    return out;
}

std::vector<CVector> demultiplex(std::span<const cd> samples, std::size_t m)
{
    if (m == 0)
        throw Error(ErrorCode::InvalidInputs, "multiplexer needs m >= 1");
    std::vector<CVector> streams(m);
    for (std::size_t j = 0; j < m; ++j)
        streams[j].reserve(samples.size() / m + 1);
    for (std::size_t s = 0; s < samples.size(); ++s)
        streams[s % m].push_back(samples[s]);
    return streams;
}

CVector multiplex(const std::vector<CVector>& streams)
{
    const std::size_t m = streams.size();
    std::size_t total = 0;
    for (const auto& st : streams)
        total += st.size();
    CVector out;
    out.reserve(total);
    for (std::size_t s = 0; s < total; ++s) {
        const auto& st = streams[s % m];
        const std::size_t k = s / m;
        if (k >= st.size())
            throw Error(ErrorCode::ShapeMismatch, "stream lengths are not a valid interleaving");
        out.push_back(st[k]);
    }
    return out;
}

BeamWeights update_beam_mrc_iir(const BeamWeights& prev, const DigitalEstimateSet& digital, std::size_t frame,
                                double mu)
{
    if (!digital.range().contains(0))
        throw Error(ErrorCode::MissingDcSubcarrier, "digital estimates lack subcarrier 0");
    if (frame >= digital.n_frames())
        throw Error(ErrorCode::InvalidInputs, "frame index out of range");
    if (!(mu >= 0.0 && mu <= 1.0))
        throw Error(ErrorCode::InvalidInputs, "IIR memory must lie in [0, 1]");
    BeamWeights out = prev;
    out.frame_tag = static_cast<int>(frame) + 1;
    for (std::size_t j = 0; j < digital.size(); ++j) {
        const std::size_t m = digital.antenna_set()[j];
        if (m >= out.beta.size())
            throw Error(ErrorCode::BadAntennaSet, "digital antenna outside the beam");
        out.beta[m] = mu * prev.beta[m] + (1.0 - mu) * std::conj(digital.at(j, frame, 0));
    }
    return out;
}

double aggregate_sampling_rate(Architecture arch, std::size_t n, double b_a)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidInputs, "need at least one antenna");
    switch (arch) {
    case Architecture::Analog: return b_a;
    case Architecture::Proposed: return 2.0 * b_a;
    case Architecture::FullMimo: return static_cast<double>(n) * b_a;
    }
    return b_a;
}

CfrTensor full_digital_estimate(const CfrTensor& cfr, double sigma, std::uint64_t rng_seed)
{
    return add_awgn(cfr, sigma, rng_seed);
}

MultipathChannel equivalent_classical_channel(const MultipathChannel& base, std::size_t n_prime)
{
    if (n_prime < 1 || (2 * base.n_subcarriers) % n_prime != 0)
        throw Error(ErrorCode::InvalidInputs, "n_prime must divide 2S");
    MultipathChannel out = base;
    out.n_antennas = n_prime;
    out.n_subcarriers = 2 * base.n_subcarriers / n_prime;
    return out;
}

} // namespace jcs
