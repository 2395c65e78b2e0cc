#include "encoder.hpp"

#include <stdexcept>

namespace swp {

BitVector polar_encode_block(BitVector u) {
    const auto m = static_cast<std::uint32_t>(u.size());
    if (!is_power_of_two(m))
        throw std::invalid_argument("polar_encode_block: length must be a power of two");
    for (std::uint32_t h = 1; h < m; h <<= 1)
        for (std::uint32_t i = 0; i < m; i += 2 * h)
            for (std::uint32_t j = i; j < i + h; ++j)
                u[j] ^= u[j + h];
    return u;
}

BitVector encode_matrix(const BitVector& u, const CodeConfig& config) {
    config.validate();
    if (u.size() != config.block_length)
        throw std::invalid_argument("encode_matrix: input length does not match N");
    if (config.block_length > 4096)
        throw std::invalid_argument("encode_matrix: reference path supports N <= 4096 only");
    const BinaryMatrix t = kronecker(make_ws_kernel(config.window_count()),
                                     polar_transform(config.window_stages()));
    return t.mul_left(u);
}

EncodeResult encode_accumulate(const BitVector& u, const CodeConfig& config, bool keep_partials) {
    config.validate();
    if (u.size() != config.block_length)
        throw std::invalid_argument("encode_accumulate: input length does not match N");

    const std::uint32_t s = config.window_count();
    const std::uint32_t m = config.window_length;

    EncodeResult result;
    result.codeword.resize(config.block_length);
    if (keep_partials)
        result.partials.reserve(s);

    for (std::uint32_t b = 0; b < s; ++b) {
        BitVector block(u.begin() + std::size_t{b} * m, u.begin() + std::size_t{b + 1} * m);
        block = polar_encode_block(std::move(block));
        std::copy(block.begin(), block.end(), result.codeword.begin() + std::size_t{b} * m);
        if (keep_partials)
            result.partials.push_back(std::move(block));
    }
    // the parallel window encoders account for log2(M) butterfly stages
    result.steps = config.window_stages();

    // suffix XOR, one accumulation step per window
    for (std::uint32_t b = s - 1; b > 0; --b) {
        std::uint8_t* dst = result.codeword.data() + std::size_t{b - 1} * m;
        const std::uint8_t* src = result.codeword.data() + std::size_t{b} * m;
        for (std::uint32_t j = 0; j < m; ++j)
            dst[j] ^= src[j];
        ++result.steps;
    }
    ++result.steps; // emitting t^(S) itself
    return result;
}

BitVector build_input(const BitVector& message, const IndexSet& info_set, std::uint32_t n) {
    if (message.size() != info_set.size())
        throw std::invalid_argument("build_input: message length does not match information set size");
    BitVector u(n, 0);
    std::size_t next = 0;
    for (std::uint32_t idx : info_set) {
        if (idx >= n)
            throw std::invalid_argument("build_input: information index out of range");
        u[idx] = message[next++];
    }
    return u;
}

} // namespace swp
