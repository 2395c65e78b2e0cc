#pragma once

#include <optional>
#include <span>

#include "core.hpp"
#include "decoder.hpp"

namespace swp {

/// Whether the survivor list survives window boundaries or collapses to the
/// best path after each window.
enum class ListScope { carried, per_window };

struct SwOptions {
    BoxplusMode mode = BoxplusMode::exact;
    std::uint32_t list_size = 1;
    ListScope scope = ListScope::carried;
};

struct SwDecodeStats {
    std::uint64_t steps = 0;   // time-step model: 2M per non-final window, 2M-2 for the final one
    double best_metric = 0.0;
};

/// Elementwise boxplus of the buffer with the next window of channel LLRs.
LlrVector window_combine(const LlrVector& buffer, const LlrVector& y_next, BoxplusMode mode);

/// Elementwise (-1)^x * l + y, the buffer update after re-encoding a window.
LlrVector buffer_update(const LlrVector& buffer, const BitVector& x_window, const LlrVector& y_next);

/// { i - (s-1)M | i in info, (s-1)M <= i < sM }, window index s is 1-based.
IndexSet restrict_info_set(const IndexSet& info, std::uint32_t window, std::uint32_t m);

/// Incremental sliding-window decoder. Windows of M channel LLRs are pushed
/// in order; decoded input-vector windows are emitted as soon as they are
/// final. SC emits window s right after window s+1 arrives; per-window list
/// decoding does the same; a carried list emits everything after the last
/// window. Working state is O(M * list size) regardless of N.
class SlidingWindowDecoder {
  public:
    SlidingWindowDecoder(const CodeConfig& config, IndexSet info, SwOptions options = {});

    /// Feed the next window; returns the input-vector windows decided by it.
    std::vector<BitVector> push_window(std::span<const double> window_llrs);

    bool finished() const { return next_window_ > window_count_; }

    /// Full decision vector; valid once finished.
    const BitVector& decisions() const;
    double best_metric() const;
    std::uint64_t steps() const { return steps_; }

    /// Buffer plus inner-decoder footprint; excludes the emitted decisions.
    std::size_t state_bytes() const;

    /// Forwarded to the inner decoder; records leaf LLRs across all windows
    /// in global input order (meaningful for single-path decoding).
    void set_leaf_llr_trace(std::vector<double>* trace) { inner_.set_leaf_llr_trace(trace); }

    void reset();

  private:
    struct Path {
        LlrVector buffer;
        BitVector committed; // all windows decided so far
        double metric = 0.0;
    };

    std::vector<BitVector> run_window(std::uint32_t window, const LlrVector* y_next);

    CodeConfig config_;
    IndexSet info_;
    SwOptions options_;
    std::uint32_t window_count_;
    std::uint32_t next_window_ = 1; // next window of LLRs to receive (1-based)
    std::uint64_t steps_ = 0;
    std::vector<Path> paths_;
    std::size_t best_path_ = 0;
    std::uint32_t emitted_windows_ = 0;
    ListDecoder inner_;
    std::vector<IndexSet> window_frozen_; // frozen sets per window, local indices
};

/// Batch Algorithm-1 decode, SC.
BitVector sw_sc_decode(const LlrVector& y, const CodeConfig& config, const IndexSet& info,
                       BoxplusMode mode = BoxplusMode::exact, SwDecodeStats* stats = nullptr);

/// Batch sliding-window list decode.
BitVector sw_scl_decode(const LlrVector& y, const CodeConfig& config, const IndexSet& info,
                        std::uint32_t list_size, BoxplusMode mode = BoxplusMode::exact,
                        ListScope scope = ListScope::carried, SwDecodeStats* stats = nullptr);

/// Time-step count of the sliding-window schedule, 2N - 2.
std::uint64_t latency_steps(std::uint32_t n, std::uint32_t m);

} // namespace swp
