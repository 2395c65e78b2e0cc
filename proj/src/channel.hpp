#pragma once

#include "core.hpp"

namespace swp {

/// Identifies one frame of one experiment; (seed, frame_index) fully
/// determines every random draw, so frames can be generated in any order
/// and on any worker with bit-identical results.
struct ChannelRealization {
    std::uint64_t seed = 0;
    std::uint64_t frame_index = 0;
};

/// Independent sub-streams of one frame.
enum class RngLane : std::uint32_t { noise = 0, message = 1, erasure = 2 };

/// Stateless counter-based generator: SplitMix64 finalizer chain over
/// (seed, frame, lane, position). See README for the exact construction.
std::uint64_t stream_u64(std::uint64_t seed, std::uint64_t frame, RngLane lane, std::uint64_t position);

/// Uniform draw in (0, 1].
double stream_uniform(std::uint64_t seed, std::uint64_t frame, RngLane lane, std::uint64_t position);

/// Standard Gaussian via Box-Muller (cosine branch) on two lane positions.
double stream_gaussian(std::uint64_t seed, std::uint64_t frame, RngLane lane, std::uint64_t position);

/// BPSK map: bit 0 -> +1.0, bit 1 -> -1.0.
std::vector<double> bpsk_modulate(const BitVector& x);

/// Noise variance of the BPSK/AWGN channel at rate R and Eb/N0 gamma dB.
double awgn_sigma2(double rate, double ebn0_db);

/// Transmit symbols over AWGN and return channel LLRs 2r/sigma^2.
LlrVector awgn_llr(const std::vector<double>& symbols, double rate, double ebn0_db,
                   const ChannelRealization& realization);

/// BEC transmission: erased positions yield LLR 0, the rest +-kLlrMax.
LlrVector bec_llr(const BitVector& x, double delta, const ChannelRealization& realization);

/// K uniform message bits drawn from the frame's message lane.
BitVector random_message(std::uint64_t seed, std::uint64_t frame, std::uint32_t k);

} // namespace swp
