#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core.hpp"

namespace swp {

enum class BoxplusMode { exact, minsum };

/// Check-node LLR combination. Exact mode is the tanh rule (saturated),
/// minsum is sgn(a) sgn(b) min(|a|, |b|).
double f_op(double a, double b, BoxplusMode mode);

/// Variable-node update (-1)^bit * a + b, saturated to +-kLlrMax.
double g_op(double a, double b, std::uint8_t bit);

struct DecoderPath {
    BitVector decisions;
    double metric = 0.0;
};

/// Leaf-sequential SC / SC-list engine for one length-M polar code.
///
/// The decode can be seeded with several starting hypotheses (each carrying
/// its own channel LLRs and accumulated metric); the sliding-window list
/// decoder uses this to carry survivors across window boundaries. Paths
/// duplicate at information bits, accrue |LLR| penalties for decisions that
/// oppose the LLR sign, and are pruned to the list size at every information
/// bit. Selection ties prefer the 0 decision, then the earlier path.
class ListDecoder {
  public:
    struct Seed {
        const double* llr;   // M channel LLRs
        double metric = 0.0; // carried-in penalty
        std::size_t tag = 0; // caller identity, reported back on survivors
    };

    struct Survivor {
        BitVector decisions; // length M
        double metric = 0.0;
        std::size_t seed_tag = 0;
    };

    struct Result {
        std::vector<Survivor> paths; // deterministic order
        std::size_t best = 0;        // index of the minimum-metric survivor
    };

    ListDecoder(std::uint32_t block_length, BoxplusMode mode);

    Result decode(std::span<const Seed> seeds, const IndexSet& frozen, std::uint32_t list_size);

    /// Accumulated schedule steps (one per node-level f or g computation);
    /// a full decode contributes 2M - 2.
    std::uint64_t steps() const { return steps_; }
    void reset_steps() { steps_ = 0; }

    /// Working-state footprint of the allocated path slots (decode buffers
    /// only, independent of any outer code length).
    std::size_t state_bytes() const;

    /// Optional trace: minimum active metric after each leaf.
    void set_metric_trace(std::vector<double>* trace) { metric_trace_ = trace; }

    /// Optional trace: decision LLR of the first active path at each leaf
    /// (the leaf LLR when decoding with a single path).
    void set_leaf_llr_trace(std::vector<double>* trace) { leaf_llr_trace_ = trace; }

  private:
    struct Slot {
        std::vector<double> alpha; // heap layout, level l at [2^l, 2^(l+1)), size 2M
        std::vector<std::uint8_t> beta; // stored left-child partial sums, size M
        BitVector decisions;            // size M
        double metric = 0.0;
        std::size_t seed_tag = 0;
    };

    void compute_alpha(Slot& slot, std::uint32_t leaf);
    void apply_decision(Slot& slot, std::uint32_t leaf, std::uint8_t bit, double penalty);
    std::uint32_t acquire_slot();

    std::uint32_t m_bits_;   // log2 M
    std::uint32_t length_;   // M
    BoxplusMode mode_;
    std::uint64_t steps_ = 0;

    std::vector<Slot> pool_;
    std::vector<std::uint32_t> free_slots_;
    std::vector<std::uint32_t> active_;
    std::vector<std::uint8_t> scratch_beta_;
    std::vector<double>* metric_trace_ = nullptr;
    std::vector<double>* leaf_llr_trace_ = nullptr;
};

/// Plain SC decode; frozen positions decode to zero.
BitVector sc_decode(const LlrVector& llr, const IndexSet& frozen, BoxplusMode mode = BoxplusMode::exact);

struct SclOutcome {
    BitVector best;
    std::vector<DecoderPath> paths;
};

/// SC list decode returning the best path and the survivor list.
SclOutcome scl_decode(const LlrVector& llr, const IndexSet& frozen, std::uint32_t list_size,
                      BoxplusMode mode = BoxplusMode::exact);

} // namespace swp
