#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "channel.hpp"
#include "encoder.hpp"

namespace swp {

double q_func(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double sc_bler_bound(const ReliabilityProfile& means, const IndexSet& info) {
    if (means.kind != ReliabilityKind::ga_mean)
        throw std::invalid_argument("sc_bler_bound: GA-mean profile required");
    double sum = 0.0;
    for (std::uint32_t i : info) {
        if (i >= means.values.size())
            throw std::invalid_argument("sc_bler_bound: information index out of range");
        sum += q_func(std::sqrt(means.values[i] / 2.0));
    }
    return std::clamp(sum, 0.0, 1.0);
}

double ind_bler_bound(double p_e, std::uint32_t s) {
    if (p_e < 0.0 || p_e > 1.0)
        throw std::invalid_argument("ind_bler_bound: p_e must lie in [0, 1]");
    return 1.0 - std::pow(1.0 - p_e, double(s));
}

CodeInstance CodeInstance::build(const CodeConfig& config, StrategyKind kind) {
    config.validate();
    CodeInstance instance;
    instance.config_ = config;
    instance.kind_ = kind;

    switch (kind) {
    case StrategyKind::sw: {
        Design design = design_sw(config);
        instance.profile_ = std::move(design.profile);
        instance.frozen_ = std::move(design.frozen);
        instance.info_ = std::move(design.info);
        break;
    }
    case StrategyKind::full: {
        Design design = design_full(config.block_length, config.info_length, config.design);
        instance.profile_ = std::move(design.profile);
        instance.frozen_ = std::move(design.frozen);
        instance.info_ = std::move(design.info);
        break;
    }
    case StrategyKind::ind: {
        instance.blocks_ = design_ind(config.block_length, config.window_length,
                                      config.info_length, config.design);
        const std::uint32_t m = config.window_length;
        std::vector<std::uint32_t> info_global;
        std::vector<double> profile;
        profile.reserve(config.block_length);
        instance.profile_.kind = instance.blocks_.front().profile.kind;
        for (std::uint32_t b = 0; b < instance.blocks_.size(); ++b) {
            const Design& block = instance.blocks_[b];
            instance.block_message_length_.push_back(static_cast<std::uint32_t>(block.info.size()));
            for (std::uint32_t i : block.info)
                info_global.push_back(b * m + i);
            profile.insert(profile.end(), block.profile.values.begin(), block.profile.values.end());
        }
        instance.profile_.values = std::move(profile);
        instance.info_ = IndexSet(std::move(info_global));
        instance.frozen_ = IndexSet::complement_of(instance.info_, config.block_length);
        break;
    }
    }
    return instance;
}

BitVector CodeInstance::encode(const BitVector& message) const {
    if (message.size() != config_.info_length)
        throw std::invalid_argument("CodeInstance::encode: message must hold K bits");
    switch (kind_) {
    case StrategyKind::sw: {
        const BitVector u = build_input(message, info_, config_.block_length);
        return encode_accumulate(u, config_).codeword;
    }
    case StrategyKind::full: {
        const BitVector u = build_input(message, info_, config_.block_length);
        return polar_encode_block(u);
    }
    case StrategyKind::ind: {
        // the global information set interleaves the per-block messages in
        // index order, which matches the sequential block split
        const BitVector u = build_input(message, info_, config_.block_length);
        const std::uint32_t m = config_.window_length;
        BitVector codeword(config_.block_length);
        for (std::uint32_t b = 0; b < blocks_.size(); ++b) {
            BitVector block(u.begin() + std::size_t{b} * m, u.begin() + std::size_t{b + 1} * m);
            block = polar_encode_block(std::move(block));
            std::copy(block.begin(), block.end(), codeword.begin() + std::size_t{b} * m);
        }
        return codeword;
    }
    }
    throw std::logic_error("CodeInstance::encode: unreachable");
}

BitVector CodeInstance::decode_message(const LlrVector& llr, const DecodeOptions& options) const {
    if (llr.size() != config_.block_length)
        throw std::invalid_argument("CodeInstance::decode_message: expected N LLRs");
    const std::uint32_t list_size = options.algo == DecoderAlgo::sc ? 1 : options.list_size;
    if (list_size == 0)
        throw std::invalid_argument("CodeInstance::decode_message: list size must be positive");

    BitVector u_hat;
    switch (kind_) {
    case StrategyKind::sw:
        u_hat = sw_scl_decode(llr, config_, info_, list_size, options.mode, options.scope);
        break;
    case StrategyKind::full: {
        const IndexSet frozen = IndexSet::complement_of(info_, config_.block_length);
        u_hat = list_size == 1 ? sc_decode(llr, frozen, options.mode)
                               : scl_decode(llr, frozen, list_size, options.mode).best;
        break;
    }
    case StrategyKind::ind: {
        const std::uint32_t m = config_.window_length;
        u_hat.reserve(config_.block_length);
        for (std::uint32_t b = 0; b < blocks_.size(); ++b) {
            const LlrVector block_llr(llr.begin() + std::size_t{b} * m,
                                      llr.begin() + std::size_t{b + 1} * m);
            const IndexSet frozen = IndexSet::complement_of(blocks_[b].info, m);
            BitVector block = list_size == 1
                                  ? sc_decode(block_llr, frozen, options.mode)
                                  : scl_decode(block_llr, frozen, list_size, options.mode).best;
            u_hat.insert(u_hat.end(), block.begin(), block.end());
        }
        break;
    }
    }

    BitVector message;
    message.reserve(info_.size());
    for (std::uint32_t i : info_)
        message.push_back(u_hat[i]);
    return message;
}

namespace {

ReliabilityProfile means_profile(const CodeConfig& config, StrategyKind kind, double channel_ebn0_db) {
    const double mu = channel_llr_mean(config.rate(), channel_ebn0_db);

    ReliabilityProfile profile{ReliabilityKind::ga_mean, {}};
    profile.values.reserve(config.block_length);
    if (kind == StrategyKind::sw) {
        const auto seeds = ws_block_means(config.window_count(), mu);
        for (double seed : seeds) {
            std::vector<double> block{seed};
            for (std::uint32_t t = 0; t < config.window_stages(); ++t)
                block = polar_stage_means(block);
            profile.values.insert(profile.values.end(), block.begin(), block.end());
        }
    } else if (kind == StrategyKind::full) {
        std::vector<double> values{mu};
        for (std::uint32_t t = 0; t < config.stages(); ++t)
            values = polar_stage_means(values);
        profile.values = std::move(values);
    } else {
        std::vector<double> block{mu};
        for (std::uint32_t t = 0; t < config.window_stages(); ++t)
            block = polar_stage_means(block);
        for (std::uint32_t b = 0; b < config.window_count(); ++b)
            profile.values.insert(profile.values.end(), block.begin(), block.end());
    }
    return profile;
}

} // namespace

double strategy_sc_bound(const CodeConfig& config, StrategyKind kind, double channel_ebn0_db,
                         std::optional<double> design_ebn0_db) {
    CodeConfig designed = config;
    designed.design = DesignChannel::awgn(design_ebn0_db.value_or(channel_ebn0_db));
    const ReliabilityProfile means = means_profile(config, kind, channel_ebn0_db);

    if (kind == StrategyKind::ind) {
        // first-order union form: sum of the per-block Q sums. Equals the
        // product composition 1 - prod(1 - p_b) to within (sum p)^2 and keeps
        // all three strategies on the same bound form.
        const auto blocks = design_ind(config.block_length, config.window_length,
                                       config.info_length, designed.design);
        const std::uint32_t m = config.window_length;
        double sum = 0.0;
        for (std::uint32_t b = 0; b < blocks.size(); ++b)
            for (std::uint32_t i : blocks[b].info)
                sum += q_func(std::sqrt(means.values[std::size_t{b} * m + i] / 2.0));
        return std::clamp(sum, 0.0, 1.0);
    }

    const Design design = kind == StrategyKind::sw
                              ? design_sw(designed)
                              : design_full(config.block_length, config.info_length, designed.design);
    return sc_bler_bound(means, design.info);
}

double target_snr(const CodeConfig& config, StrategyKind kind, double target_bler,
                  std::optional<double> design_ebn0_db) {
    if (!(target_bler > 0.0) || target_bler >= 1.0)
        throw std::invalid_argument("target_snr: target BLER must lie in (0, 1)");
    double lo = -2.0, hi = 12.0;
    const double b_lo = strategy_sc_bound(config, kind, lo, design_ebn0_db);
    const double b_hi = strategy_sc_bound(config, kind, hi, design_ebn0_db);
    if (!(b_lo >= target_bler && target_bler >= b_hi))
        throw std::runtime_error("target_snr: target BLER not bracketed on [-2, 12] dB");
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        const double b_mid = strategy_sc_bound(config, kind, mid, design_ebn0_db);
        (b_mid >= target_bler ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

std::uint32_t resolve_threads(std::uint32_t threads) {
    if (threads != 0)
        return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

BlerPoint monte_carlo_bler(const CodeInstance& instance, const DecodeOptions& options,
                           double ebn0_db, const StopRule& stop, std::uint64_t seed,
                           std::uint32_t threads) {
    if (instance.config().design.kind != DesignChannel::Kind::awgn)
        throw std::invalid_argument("monte_carlo_bler: AWGN design channel required");
    const std::uint32_t workers = resolve_threads(threads);
    const double rate = instance.config().rate();
    const std::uint32_t k = instance.message_length();

    if (k == 0) {
        // nothing transmitted, nothing to get wrong
        BlerPoint trivial;
        trivial.ebn0_db = ebn0_db;
        trivial.frames = stop.max_frames;
        trivial.rel_std_err = 1.0;
        return trivial;
    }

    constexpr std::uint64_t kBatch = 1024;
    std::uint64_t frames = 0;
    std::uint64_t errors = 0;

    auto run_range = [&](std::uint64_t first, std::uint64_t last) -> std::uint64_t {
        std::uint64_t local_errors = 0;
        for (std::uint64_t frame = first; frame < last; ++frame) {
            const BitVector message = k > 0 ? random_message(seed, frame, k) : BitVector{};
            const BitVector codeword = instance.encode(message);
            const auto symbols = bpsk_modulate(codeword);
            const LlrVector llr = awgn_llr(symbols, rate, ebn0_db, {seed, frame});
            const BitVector decoded = instance.decode_message(llr, options);
            if (decoded != message)
                ++local_errors;
        }
        return local_errors;
    };

    while (frames < stop.max_frames && errors < stop.max_errors) {
        const std::uint64_t batch = std::min<std::uint64_t>(kBatch, stop.max_frames - frames);
        if (workers <= 1 || batch < 2 * workers) {
            errors += run_range(frames, frames + batch);
        } else {
            std::vector<std::uint64_t> partial(workers, 0);
            std::vector<std::exception_ptr> worker_error(workers);
            std::vector<std::thread> pool;
            pool.reserve(workers);
            const std::uint64_t chunk = (batch + workers - 1) / workers;
            for (std::uint32_t w = 0; w < workers; ++w) {
                const std::uint64_t first = frames + w * chunk;
                const std::uint64_t last = std::min(frames + batch, first + chunk);
                if (first >= last)
                    break;
                pool.emplace_back([&, w, first, last] {
                    try {
                        partial[w] = run_range(first, last);
                    } catch (...) {
                        worker_error[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool)
                t.join();
            for (const auto& err : worker_error)
                if (err)
                    std::rethrow_exception(err);
            for (std::uint64_t e : partial)
                errors += e;
        }
        frames += batch;
    }

    BlerPoint point;
    point.ebn0_db = ebn0_db;
    point.frames = frames;
    point.errors = errors;
    point.bler = frames ? static_cast<double>(errors) / frames : 0.0;
    point.source = BlerPoint::Source::simulation;
    point.rel_std_err = errors > 0 ? std::sqrt((1.0 - point.bler) / errors) : 1.0;
    return point;
}

std::uint64_t sweep_point_seed(std::uint64_t seed, std::size_t index) {
    return stream_u64(seed, 0x53574545ull /* 'SWEE' */, RngLane::noise, index);
}

std::vector<BlerPoint> snr_sweep(const CodeConfig& config, const Strategy& strategy,
                                 const std::vector<double>& ebn0_list, const StopRule& stop,
                                 std::uint64_t seed, std::uint32_t threads,
                                 std::optional<double> design_ebn0_db) {
    std::vector<BlerPoint> points;
    points.reserve(ebn0_list.size());
    for (std::size_t i = 0; i < ebn0_list.size(); ++i) {
        CodeConfig designed = config;
        designed.design = DesignChannel::awgn(design_ebn0_db.value_or(ebn0_list[i]));
        const CodeInstance instance = CodeInstance::build(designed, strategy.kind);
        points.push_back(monte_carlo_bler(instance, strategy.decode, ebn0_list[i], stop,
                                          sweep_point_seed(seed, i), threads));
    }
    return points;
}

std::vector<BlerPoint> bound_sweep(const CodeConfig& config, StrategyKind kind,
                                   const std::vector<double>& ebn0_list,
                                   std::optional<double> design_ebn0_db) {
    std::vector<BlerPoint> points;
    points.reserve(ebn0_list.size());
    for (double gamma : ebn0_list) {
        BlerPoint point;
        point.ebn0_db = gamma;
        point.bler = strategy_sc_bound(config, kind, gamma, design_ebn0_db);
        point.source = BlerPoint::Source::bound;
        points.push_back(point);
    }
    return points;
}

double mc_target_snr(const CodeConfig& config, const Strategy& strategy, double target_bler,
                     const StopRule& per_point, std::uint64_t seed, std::uint32_t threads,
                     double lo_db, double hi_db, double tol_db) {
    auto measure = [&](double gamma) -> double {
        CodeConfig designed = config;
        designed.design = DesignChannel::awgn(gamma);
        const CodeInstance instance = CodeInstance::build(designed, strategy.kind);
        std::uint64_t gamma_key = 0;
        std::memcpy(&gamma_key, &gamma, sizeof(gamma_key));
        const BlerPoint point = monte_carlo_bler(instance, strategy.decode, gamma, per_point,
                                                 sweep_point_seed(seed, gamma_key), threads);
        // zero observed errors: everything we know is an upper bound
        return point.errors ? point.bler : 0.5 / std::max<std::uint64_t>(point.frames, 1);
    };

    double lo = lo_db, hi = hi_db;
    double bler_lo = measure(lo);
    double bler_hi = measure(hi);
    if (bler_lo < target_bler || bler_hi > target_bler)
        throw std::runtime_error("mc_target_snr: target BLER not bracketed");
    while (hi - lo > tol_db) {
        const double mid = 0.5 * (lo + hi);
        const double bler_mid = measure(mid);
        if (bler_mid >= target_bler) {
            lo = mid;
            bler_lo = bler_mid;
        } else {
            hi = mid;
            bler_hi = bler_mid;
        }
    }
    // log-linear interpolation across the final bracket
    const double la = std::log10(bler_lo), lb = std::log10(bler_hi), lt = std::log10(target_bler);
    if (la == lb)
        return 0.5 * (lo + hi);
    return lo + (hi - lo) * (la - lt) / (la - lb);
}

const char* strategy_name(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::sw: return "sw";
    case StrategyKind::ind: return "ind";
    case StrategyKind::full: return "full";
    }
    return "?";
}

const char* decoder_name(DecoderAlgo algo) {
    return algo == DecoderAlgo::sc ? "sc" : "scl";
}

void write_csv_header(std::ostream& os) {
    os << "strategy,decoder,list_size,N,M,K,ebn0_db,source,frames,errors,bler\n";
}

void write_csv_row(std::ostream& os, const CodeConfig& config, const Strategy& strategy,
                   const BlerPoint& point) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s,%s,%u,%u,%u,%u,%.6g,%s,%llu,%llu,%.6e\n",
                  strategy_name(strategy.kind), decoder_name(strategy.decode.algo),
                  strategy.decode.algo == DecoderAlgo::sc ? 1u : strategy.decode.list_size,
                  config.block_length, config.window_length, config.info_length, point.ebn0_db,
                  point.source == BlerPoint::Source::bound ? "bound" : "simulation",
                  static_cast<unsigned long long>(point.frames),
                  static_cast<unsigned long long>(point.errors), point.bler);
    os << line;
}

} // namespace swp
