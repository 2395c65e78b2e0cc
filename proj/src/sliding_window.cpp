#include "sliding_window.hpp"

#include <stdexcept>

#include "encoder.hpp"

namespace swp {

LlrVector window_combine(const LlrVector& buffer, const LlrVector& y_next, BoxplusMode mode) {
    if (buffer.size() != y_next.size())
        throw std::invalid_argument("window_combine: length mismatch");
    LlrVector out(buffer.size());
    for (std::size_t i = 0; i < buffer.size(); ++i)
        out[i] = f_op(buffer[i], y_next[i], mode);
    return out;
}

LlrVector buffer_update(const LlrVector& buffer, const BitVector& x_window, const LlrVector& y_next) {
    if (buffer.size() != x_window.size() || buffer.size() != y_next.size())
        throw std::invalid_argument("buffer_update: length mismatch");
    LlrVector out(buffer.size());
    for (std::size_t i = 0; i < buffer.size(); ++i)
        out[i] = g_op(buffer[i], y_next[i], x_window[i]);
    return out;
}

IndexSet restrict_info_set(const IndexSet& info, std::uint32_t window, std::uint32_t m) {
    if (window == 0)
        throw std::invalid_argument("restrict_info_set: window index is 1-based");
    const std::uint32_t lo = (window - 1) * m;
    const std::uint32_t hi = window * m;
    std::vector<std::uint32_t> local;
    for (std::uint32_t i : info)
        if (i >= lo && i < hi)
            local.push_back(i - lo);
    return IndexSet(std::move(local));
}

SlidingWindowDecoder::SlidingWindowDecoder(const CodeConfig& config, IndexSet info, SwOptions options)
    : config_(config), info_(std::move(info)), options_(options),
      window_count_(config.window_count()),
      inner_(config.window_length, options.mode) {
    config_.validate();
    if (options_.list_size == 0)
        throw std::invalid_argument("SlidingWindowDecoder: list size must be positive");
    if (!info_.empty() && info_.indices().back() >= config_.block_length)
        throw std::invalid_argument("SlidingWindowDecoder: information index out of range");
    window_frozen_.reserve(window_count_);
    for (std::uint32_t s = 1; s <= window_count_; ++s)
        window_frozen_.push_back(IndexSet::complement_of(
            restrict_info_set(info_, s, config_.window_length), config_.window_length));
}

std::vector<BitVector> SlidingWindowDecoder::push_window(std::span<const double> window_llrs) {
    if (finished())
        throw std::logic_error("SlidingWindowDecoder: frame already complete");
    if (window_llrs.size() != config_.window_length)
        throw std::invalid_argument("SlidingWindowDecoder: window must hold M LLRs");

    const std::uint32_t t = next_window_;
    std::vector<BitVector> emitted;
    if (t == 1) {
        paths_.clear();
        paths_.push_back({LlrVector(window_llrs.begin(), window_llrs.end()), {}, 0.0});
        best_path_ = 0;
    } else {
        LlrVector y_next(window_llrs.begin(), window_llrs.end());
        emitted = run_window(t - 1, &y_next);
    }
    next_window_ = t + 1;
    if (t == window_count_) {
        auto last = run_window(window_count_, nullptr);
        emitted.insert(emitted.end(), last.begin(), last.end());
    }
    return emitted;
}

std::vector<BitVector> SlidingWindowDecoder::run_window(std::uint32_t window, const LlrVector* y_next) {
    const std::uint32_t m = config_.window_length;

    std::vector<LlrVector> combined;
    std::vector<ListDecoder::Seed> seeds;
    seeds.reserve(paths_.size());
    if (y_next) {
        ++steps_; // boxplus combine of buffer and next window
        combined.reserve(paths_.size());
        for (std::size_t p = 0; p < paths_.size(); ++p) {
            combined.push_back(window_combine(paths_[p].buffer, *y_next, options_.mode));
            seeds.push_back({combined.back().data(), paths_[p].metric, p});
        }
    } else {
        for (std::size_t p = 0; p < paths_.size(); ++p)
            seeds.push_back({paths_[p].buffer.data(), paths_[p].metric, p});
    }

    inner_.reset_steps();
    auto result = inner_.decode(seeds, window_frozen_[window - 1], options_.list_size);
    steps_ += inner_.steps();

    std::vector<Path> next_paths;
    next_paths.reserve(result.paths.size());
    for (auto& survivor : result.paths) {
        const Path& parent = paths_[survivor.seed_tag];
        Path path;
        path.metric = survivor.metric;
        path.committed = parent.committed;
        path.committed.insert(path.committed.end(), survivor.decisions.begin(), survivor.decisions.end());
        if (y_next) {
            const BitVector x = polar_encode_block(std::move(survivor.decisions));
            path.buffer = buffer_update(parent.buffer, x, *y_next);
        }
        next_paths.push_back(std::move(path));
    }
    if (y_next)
        ++steps_; // buffer update
    paths_.swap(next_paths);

    best_path_ = 0;
    for (std::size_t p = 1; p < paths_.size(); ++p)
        if (paths_[p].metric < paths_[best_path_].metric)
            best_path_ = p;

    const bool incremental = options_.list_size == 1 || options_.scope == ListScope::per_window;
    if (options_.scope == ListScope::per_window && paths_.size() > 1) {
        Path best = std::move(paths_[best_path_]);
        paths_.clear();
        paths_.push_back(std::move(best));
        best_path_ = 0;
    }

    std::vector<BitVector> emitted;
    if (incremental || window == window_count_) {
        const BitVector& committed = paths_[best_path_].committed;
        while (emitted_windows_ < window) {
            emitted.emplace_back(committed.begin() + std::size_t{emitted_windows_} * m,
                                 committed.begin() + std::size_t{emitted_windows_ + 1} * m);
            ++emitted_windows_;
        }
    }
    return emitted;
}

const BitVector& SlidingWindowDecoder::decisions() const {
    if (!finished())
        throw std::logic_error("SlidingWindowDecoder: frame not complete");
    return paths_[best_path_].committed;
}

double SlidingWindowDecoder::best_metric() const {
    if (!finished())
        throw std::logic_error("SlidingWindowDecoder: frame not complete");
    return paths_[best_path_].metric;
}

std::size_t SlidingWindowDecoder::state_bytes() const {
    std::size_t bytes = inner_.state_bytes();
    for (const Path& path : paths_)
        bytes += path.buffer.capacity() * sizeof(double);
    return bytes;
}

void SlidingWindowDecoder::reset() {
    next_window_ = 1;
    steps_ = 0;
    emitted_windows_ = 0;
    paths_.clear();
    best_path_ = 0;
    inner_.reset_steps();
}

namespace {

BitVector run_batch(const LlrVector& y, const CodeConfig& config, const IndexSet& info,
                    SwOptions options, SwDecodeStats* stats) {
    config.validate();
    if (y.size() != config.block_length)
        throw std::invalid_argument("sliding-window decode: expected N channel LLRs");

    SlidingWindowDecoder decoder(config, info, options);
    const std::uint32_t m = config.window_length;
    BitVector decisions;
    decisions.reserve(config.block_length);
    for (std::uint32_t s = 0; s < config.window_count(); ++s) {
        auto emitted = decoder.push_window({y.data() + std::size_t{s} * m, m});
        for (const BitVector& block : emitted)
            decisions.insert(decisions.end(), block.begin(), block.end());
    }
    if (stats) {
        stats->steps = decoder.steps();
        stats->best_metric = decoder.best_metric();
    }
    return decisions;
}

} // namespace

BitVector sw_sc_decode(const LlrVector& y, const CodeConfig& config, const IndexSet& info,
                       BoxplusMode mode, SwDecodeStats* stats) {
    return run_batch(y, config, info, SwOptions{mode, 1, ListScope::carried}, stats);
}

BitVector sw_scl_decode(const LlrVector& y, const CodeConfig& config, const IndexSet& info,
                        std::uint32_t list_size, BoxplusMode mode, ListScope scope,
                        SwDecodeStats* stats) {
    return run_batch(y, config, info, SwOptions{mode, list_size, scope}, stats);
}

std::uint64_t latency_steps(std::uint32_t n, std::uint32_t m) {
    if (!is_power_of_two(n) || !is_power_of_two(m) || m > n)
        throw std::invalid_argument("latency_steps: invalid sizes");
    return 2ull * n - 2;
}

} // namespace swp
