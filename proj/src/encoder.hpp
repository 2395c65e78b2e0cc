#pragma once

#include "core.hpp"

namespace swp {

struct EncodeResult {
    BitVector codeword;               // length N
    std::vector<BitVector> partials;  // t^(1..S), present when requested
    std::uint64_t steps = 0;          // time-step count: log2(M) butterfly stages + S accumulation steps
};

/// In-place butterfly multiply by the length-M polar transform, natural order.
BitVector polar_encode_block(BitVector u);

/// Reference encoder: explicit multiply by kron(W_S, T_M). Guarded to N <= 4096.
BitVector encode_matrix(const BitVector& u, const CodeConfig& config);

/// Production encoder: per-window polar encodes followed by a suffix-XOR
/// backward accumulation, so window s carries t^(s) ^ ... ^ t^(S).
EncodeResult encode_accumulate(const BitVector& u, const CodeConfig& config, bool keep_partials = false);

/// Scatter K message bits onto the information indices, zeros elsewhere.
BitVector build_input(const BitVector& message, const IndexSet& info_set, std::uint32_t n);

} // namespace swp
