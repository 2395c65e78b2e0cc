#include "channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t stream_u64(std::uint64_t seed, std::uint64_t frame, RngLane lane, std::uint64_t position) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ frame);
    h = splitmix64(h ^ (std::uint64_t{static_cast<std::uint32_t>(lane)} << 56) ^ position);
    return h;
}

double stream_uniform(std::uint64_t seed, std::uint64_t frame, RngLane lane, std::uint64_t position) {
    const std::uint64_t bits = stream_u64(seed, frame, lane, position);
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double stream_gaussian(std::uint64_t seed, std::uint64_t frame, RngLane lane, std::uint64_t position) {
    const double u1 = stream_uniform(seed, frame, lane, 2 * position);
    const double u2 = stream_uniform(seed, frame, lane, 2 * position + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> bpsk_modulate(const BitVector& x) {
    std::vector<double> symbols(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        symbols[i] = x[i] ? -1.0 : 1.0;
    return symbols;
}

double awgn_sigma2(double rate, double ebn0_db) {
    if (rate <= 0.0 || rate > 1.0)
        throw std::invalid_argument("awgn_sigma2: rate must lie in (0, 1]");
    return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

LlrVector awgn_llr(const std::vector<double>& symbols, double rate, double ebn0_db,
                   const ChannelRealization& realization) {
    const double sigma2 = awgn_sigma2(rate, ebn0_db);
    const double sigma = std::sqrt(sigma2);
    const double scale = 2.0 / sigma2;
    LlrVector llr(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const double noise = sigma * stream_gaussian(realization.seed, realization.frame_index,
                                                     RngLane::noise, i);
        llr[i] = scale * (symbols[i] + noise);
    }
    return llr;
}

LlrVector bec_llr(const BitVector& x, double delta, const ChannelRealization& realization) {
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("bec_llr: delta must lie in [0, 1]");
    LlrVector llr(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = stream_uniform(realization.seed, realization.frame_index, RngLane::erasure, i);
        if (u <= delta)
            llr[i] = 0.0;
        else
            llr[i] = x[i] ? -kLlrMax : kLlrMax;
    }
    return llr;
}

BitVector random_message(std::uint64_t seed, std::uint64_t frame, std::uint32_t k) {
    BitVector message(k);
    for (std::uint32_t i = 0; i < k; ++i)
        message[i] = static_cast<std::uint8_t>(stream_u64(seed, frame, RngLane::message, i) & 1u);
    return message;
}

} // namespace swp
