#include "decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace swp {

namespace {

double saturate(double v) {
    return std::clamp(v, -kLlrMax, kLlrMax);
}

double penalty(double alpha, std::uint8_t bit) {
    if (bit == 0)
        return alpha < 0.0 ? -alpha : 0.0;
    return alpha > 0.0 ? alpha : 0.0;
}

} // namespace

double f_op(double a, double b, BoxplusMode mode) {
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double fa = std::fabs(a);
    const double fb = std::fabs(b);
    const double mn = std::min(fa, fb);
    if (mode == BoxplusMode::minsum)
        return sign * mn;
    // tanh rule; beyond ~30 both factors round to +-1, where the min-sum
    // limit is exact to double precision
    if (mn > 30.0)
        return sign * mn;
    return saturate(2.0 * std::atanh(std::tanh(a / 2.0) * std::tanh(b / 2.0)));
}

double g_op(double a, double b, std::uint8_t bit) {
    return saturate(bit ? b - a : a + b);
}

ListDecoder::ListDecoder(std::uint32_t block_length, BoxplusMode mode)
    : m_bits_(log2_exact(block_length)), length_(block_length), mode_(mode) {
    scratch_beta_.resize(length_);
}

std::uint32_t ListDecoder::acquire_slot() {
    if (!free_slots_.empty()) {
        std::uint32_t id = free_slots_.back();
        free_slots_.pop_back();
        return id;
    }
    Slot slot;
    slot.alpha.assign(std::size_t{2} * length_, 0.0);
    slot.beta.assign(length_, 0);
    slot.decisions.assign(length_, 0);
    pool_.push_back(std::move(slot));
    return static_cast<std::uint32_t>(pool_.size() - 1);
}

void ListDecoder::compute_alpha(Slot& slot, std::uint32_t leaf) {
    double* a = slot.alpha.data();
    std::uint32_t top = m_bits_; // highest level refreshed by an f pass
    if (leaf != 0) {
        const auto z = static_cast<std::uint32_t>(std::countr_zero(leaf));
        const std::uint32_t half = 1u << z;
        const double* parent = a + (std::size_t{2} * half);
        const std::uint8_t* left = slot.beta.data() + half;
        double* dst = a + half;
        for (std::uint32_t j = 0; j < half; ++j)
            dst[j] = g_op(parent[j], parent[j + half], left[j]);
        top = z;
    }
    for (std::uint32_t l = top; l-- > 0;) {
        const std::uint32_t half = 1u << l;
        const double* parent = a + (std::size_t{2} * half);
        double* dst = a + half;
        for (std::uint32_t j = 0; j < half; ++j)
            dst[j] = f_op(parent[j], parent[j + half], mode_);
    }
}

void ListDecoder::apply_decision(Slot& slot, std::uint32_t leaf, std::uint8_t bit, double pen) {
    slot.decisions[leaf] = bit;
    slot.metric += pen;

    std::uint8_t* cur = scratch_beta_.data();
    cur[0] = bit;
    std::uint32_t len = 1;
    std::uint32_t l = 0;
    while (l < m_bits_ && ((leaf >> l) & 1u)) {
        const std::uint8_t* left = slot.beta.data() + len;
        for (std::uint32_t j = 0; j < len; ++j) {
            cur[j + len] = cur[j];
            cur[j] ^= left[j];
        }
        len <<= 1;
        ++l;
    }
    if (l < m_bits_)
        std::memcpy(slot.beta.data() + len, cur, len);
}

ListDecoder::Result ListDecoder::decode(std::span<const Seed> seeds, const IndexSet& frozen,
                                        std::uint32_t list_size) {
    if (list_size == 0)
        throw std::invalid_argument("ListDecoder: list size must be positive");
    if (seeds.empty() || seeds.size() > list_size)
        throw std::invalid_argument("ListDecoder: seed count must lie in [1, list size]");

    // recycle every slot from the previous decode
    free_slots_.clear();
    for (std::uint32_t id = 0; id < pool_.size(); ++id)
        free_slots_.push_back(id);
    active_.clear();

    for (const Seed& seed : seeds) {
        const std::uint32_t id = acquire_slot();
        Slot& slot = pool_[id];
        std::memcpy(slot.alpha.data() + length_, seed.llr, sizeof(double) * length_);
        std::fill(slot.decisions.begin(), slot.decisions.end(), 0);
        slot.metric = seed.metric;
        slot.seed_tag = seed.tag;
        active_.push_back(id);
    }

    struct Candidate {
        double metric;
        std::uint8_t bit;
        std::uint32_t parent_pos; // position in the active list
    };
    std::vector<Candidate> candidates;
    candidates.reserve(std::size_t{2} * list_size);
    std::vector<std::uint32_t> next_active;
    next_active.reserve(list_size);

    for (std::uint32_t leaf = 0; leaf < length_; ++leaf) {
        steps_ += (leaf == 0) ? m_bits_ : 1 + static_cast<std::uint32_t>(std::countr_zero(leaf));
        for (std::uint32_t id : active_)
            compute_alpha(pool_[id], leaf);
        if (leaf_llr_trace_)
            leaf_llr_trace_->push_back(pool_[active_[0]].alpha[1]);

        if (frozen.contains(leaf)) {
            for (std::uint32_t id : active_) {
                Slot& slot = pool_[id];
                apply_decision(slot, leaf, 0, penalty(slot.alpha[1], 0));
            }
        } else if (active_.size() == 1 && list_size == 1) {
            Slot& slot = pool_[active_[0]];
            const double alpha = slot.alpha[1];
            apply_decision(slot, leaf, alpha < 0.0 ? 1 : 0, 0.0);
        } else {
            candidates.clear();
            for (std::uint32_t pos = 0; pos < active_.size(); ++pos) {
                const double alpha = pool_[active_[pos]].alpha[1];
                const double base = pool_[active_[pos]].metric;
                candidates.push_back({base + penalty(alpha, 0), 0, pos});
                candidates.push_back({base + penalty(alpha, 1), 1, pos});
            }
            auto better = [](const Candidate& a, const Candidate& b) {
                if (a.metric != b.metric)
                    return a.metric < b.metric;
                if (a.bit != b.bit)
                    return a.bit < b.bit;
                return a.parent_pos < b.parent_pos;
            };
            std::sort(candidates.begin(), candidates.end(), better);
            if (candidates.size() > list_size)
                candidates.resize(list_size);

            // materialize first: the first surviving child of a parent reuses
            // its slot, further children clone it before any mutation
            std::vector<std::uint8_t> seen(active_.size(), 0);
            next_active.clear();
            for (const Candidate& cand : candidates) {
                std::uint32_t slot_id = active_[cand.parent_pos];
                if (seen[cand.parent_pos]++) {
                    const std::uint32_t clone_id = acquire_slot();
                    Slot& clone = pool_[clone_id]; // refetch: pool may have grown
                    const Slot& src = pool_[slot_id];
                    clone.alpha = src.alpha;
                    clone.beta = src.beta;
                    clone.decisions = src.decisions;
                    clone.seed_tag = src.seed_tag;
                    slot_id = clone_id;
                }
                next_active.push_back(slot_id);
            }
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                Slot& slot = pool_[next_active[c]];
                slot.metric = candidates[c].metric;
                apply_decision(slot, leaf, candidates[c].bit, 0.0);
            }
            // release parents with no surviving child
            for (std::uint32_t pos = 0; pos < active_.size(); ++pos)
                if (!seen[pos])
                    free_slots_.push_back(active_[pos]);
            active_.swap(next_active);
        }

        if (metric_trace_) {
            double mn = std::numeric_limits<double>::infinity();
            for (std::uint32_t id : active_)
                mn = std::min(mn, pool_[id].metric);
            metric_trace_->push_back(mn);
        }
    }

    Result result;
    result.paths.reserve(active_.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < active_.size(); ++i) {
        const Slot& slot = pool_[active_[i]];
        result.paths.push_back({slot.decisions, slot.metric, slot.seed_tag});
        if (slot.metric < result.paths[best].metric)
            best = i;
    }
    result.best = best;
    return result;
}

std::size_t ListDecoder::state_bytes() const {
    std::size_t per_slot = sizeof(Slot) + sizeof(double) * 2 * length_ + 2 * std::size_t{length_};
    return pool_.size() * per_slot + scratch_beta_.size();
}

BitVector sc_decode(const LlrVector& llr, const IndexSet& frozen, BoxplusMode mode) {
    ListDecoder decoder(static_cast<std::uint32_t>(llr.size()), mode);
    ListDecoder::Seed seed{llr.data(), 0.0, 0};
    auto result = decoder.decode({&seed, 1}, frozen, 1);
    return std::move(result.paths[result.best].decisions);
}

SclOutcome scl_decode(const LlrVector& llr, const IndexSet& frozen, std::uint32_t list_size,
                      BoxplusMode mode) {
    ListDecoder decoder(static_cast<std::uint32_t>(llr.size()), mode);
    ListDecoder::Seed seed{llr.data(), 0.0, 0};
    auto result = decoder.decode({&seed, 1}, frozen, list_size);

    SclOutcome outcome;
    outcome.best = result.paths[result.best].decisions;
    outcome.paths.reserve(result.paths.size());
    for (auto& path : result.paths)
        outcome.paths.push_back({std::move(path.decisions), path.metric});
    return outcome;
}

} // namespace swp
