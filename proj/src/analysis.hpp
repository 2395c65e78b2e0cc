#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "construction.hpp"
#include "core.hpp"
#include "decoder.hpp"
#include "sliding_window.hpp"

namespace swp {

enum class StrategyKind { sw, ind, full };
enum class DecoderAlgo { sc, scl };

struct DecodeOptions {
    DecoderAlgo algo = DecoderAlgo::sc;
    std::uint32_t list_size = 1;
    BoxplusMode mode = BoxplusMode::exact;
    ListScope scope = ListScope::carried;
};

struct Strategy {
    StrategyKind kind = StrategyKind::sw;
    DecodeOptions decode;
};

struct StopRule {
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t max_errors = 100;
};

struct BlerPoint {
    enum class Source { bound, simulation };
    double ebn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t errors = 0;
    double bler = 0.0;
    Source source = Source::simulation;
    double rel_std_err = 0.0; // ~1/sqrt(errors) for simulation points
};

/// Tail probability of the standard Gaussian.
double q_func(double x);

/// SC block-error approximation: sum over the information set of
/// Q(sqrt(mu_i / 2)), clamped to [0, 1]. Requires a GA-mean profile.
double sc_bler_bound(const ReliabilityProfile& means, const IndexSet& info);

/// BLER of S independent transmissions, 1 - (1 - p_e)^S.
double ind_bler_bound(double p_e, std::uint32_t s);

/// A fully designed transmit/receive chain for one strategy.
class CodeInstance {
  public:
    static CodeInstance build(const CodeConfig& config, StrategyKind kind);

    const CodeConfig& config() const { return config_; }
    StrategyKind kind() const { return kind_; }
    std::uint32_t message_length() const { return config_.info_length; }

    /// Global-numbering sets (IND blocks are offset by their window base).
    const IndexSet& info() const { return info_; }
    const IndexSet& frozen() const { return frozen_; }
    const ReliabilityProfile& profile() const { return profile_; }
    const std::vector<Design>& blocks() const { return blocks_; } // IND only

    BitVector encode(const BitVector& message) const;

    /// Decode channel LLRs and return the K recovered message bits.
    BitVector decode_message(const LlrVector& llr, const DecodeOptions& options) const;

  private:
    CodeConfig config_;
    StrategyKind kind_ = StrategyKind::sw;
    IndexSet info_;
    IndexSet frozen_;
    ReliabilityProfile profile_;
    std::vector<Design> blocks_;
    std::vector<std::uint32_t> block_message_length_;
};

/// GA SC bound for a strategy: code designed at `design_ebn0_db` (or at the
/// channel point when absent), means evolved at `channel_ebn0_db`.
double strategy_sc_bound(const CodeConfig& config, StrategyKind kind, double channel_ebn0_db,
                         std::optional<double> design_ebn0_db = std::nullopt);

/// Bisection of strategy_sc_bound over gamma in [-2, 12] dB for the Eb/N0
/// reaching the target BLER. Throws when the target is not bracketed.
double target_snr(const CodeConfig& config, StrategyKind kind, double target_bler,
                  std::optional<double> design_ebn0_db = std::nullopt);

/// Fixed-batch Monte Carlo BLER at one channel point. Frames are simulated
/// in whole batches so the stopping point (and therefore the estimate) does
/// not depend on the worker count.
BlerPoint monte_carlo_bler(const CodeInstance& instance, const DecodeOptions& options,
                           double ebn0_db, const StopRule& stop, std::uint64_t seed,
                           std::uint32_t threads = 0);

/// Deterministic sub-seed for sweep point `index`.
std::uint64_t sweep_point_seed(std::uint64_t seed, std::size_t index);

/// Monte Carlo sweep over a gamma grid; the code is redesigned at each point
/// unless a design point pins it.
std::vector<BlerPoint> snr_sweep(const CodeConfig& config, const Strategy& strategy,
                                 const std::vector<double>& ebn0_list, const StopRule& stop,
                                 std::uint64_t seed, std::uint32_t threads = 0,
                                 std::optional<double> design_ebn0_db = std::nullopt);

/// Analytic curve over the same grid (frames = errors = 0, source = bound).
std::vector<BlerPoint> bound_sweep(const CodeConfig& config, StrategyKind kind,
                                   const std::vector<double>& ebn0_list,
                                   std::optional<double> design_ebn0_db = std::nullopt);

/// Monte Carlo search for the gamma reaching `target_bler`; bisection plus a
/// final log-linear interpolation. The design tracks the channel point.
double mc_target_snr(const CodeConfig& config, const Strategy& strategy, double target_bler,
                     const StopRule& per_point, std::uint64_t seed, std::uint32_t threads,
                     double lo_db, double hi_db, double tol_db = 0.1);

const char* strategy_name(StrategyKind kind);
const char* decoder_name(DecoderAlgo algo);

/// CSV emission, schema:
/// strategy,decoder,list_size,N,M,K,ebn0_db,source,frames,errors,bler
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const CodeConfig& config, const Strategy& strategy,
                   const BlerPoint& point);

} // namespace swp
