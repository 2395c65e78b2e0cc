#pragma once

#include <vector>

#include "core.hpp"

namespace swp {

enum class ReliabilityKind {
    erasure, // Bhattacharyya / erasure probability, lower is better
    ga_mean, // DE/GA LLR mean, higher is better
};

struct ReliabilityProfile {
    ReliabilityKind kind = ReliabilityKind::erasure;
    std::vector<double> values;
};

/// E[tanh(z/2)] complement for z ~ N(x, 2x), evaluated with the closed-form
/// two-piece fit: exp(0.0564 x^2 - 0.4856 x) below the crossing point and
/// exp(0.0218 - 0.4527 x^0.86) above it. Strictly decreasing, phi(0) = 1.
double phi(double x);

/// Inverse of phi on (0, 1]; phi_inv(1) = 0.
double phi_inv(double y);

/// Per-window erasure probabilities seen through the coupling kernel:
/// delta_i = 1 - (1 - delta)(1 - delta^(i+1)) for i < S-1, delta_(S-1) = delta^S.
std::vector<double> ws_block_erasures(std::uint32_t s, double delta);

/// Same recursion applied to a Bhattacharyya parameter (upper-bound form).
std::vector<double> ws_block_bhattacharyya(std::uint32_t s, double z);

/// DE/GA means of the per-window virtual channels:
/// mu_i = phi_inv(1 - (1 - phi(mu))(1 - phi((i+1) mu))) for i < S-1, mu_(S-1) = S mu.
std::vector<double> ws_block_means(std::uint32_t s, double mu);

/// One polarization stage. Each input z yields the adjacent pair
/// [1-(1-z)^2, z^2]; m applications expand one channel value into the 2^m
/// bit-channel values in natural decode order.
std::vector<double> polar_stage_erasure(const std::vector<double>& profile);

/// GA counterpart: each mean mu yields [phi_inv(1 - (1 - phi(mu))^2), 2 mu].
std::vector<double> polar_stage_means(const std::vector<double>& profile);

/// BPSK/AWGN channel LLR mean 4 R 10^(gamma/10).
double channel_llr_mean(double rate, double ebn0_db);

struct Design {
    ReliabilityProfile profile;
    IndexSet frozen;
    IndexSet info;
};

/// Reliabilities and frozen set of the coupled code: window-kernel recursion
/// first, then log2(M) polarization stages per window, global sort.
Design design_sw(const CodeConfig& config);

/// Classical length-N polar construction.
Design design_full(std::uint32_t n, std::uint32_t k, const DesignChannel& design, double rate_override = -1.0);

/// S independent (M, K_s) designs; earlier blocks absorb the K mod S extras.
/// Index sets are local to each block, i.e. within [0, M).
std::vector<Design> design_ind(std::uint32_t n, std::uint32_t m, std::uint32_t k, const DesignChannel& design);

/// Shared selection rule: K most reliable indices become the information set,
/// ties resolved toward the lower index.
Design select_frozen(ReliabilityProfile profile, std::uint32_t k);

} // namespace swp
