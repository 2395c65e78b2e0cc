#include "swpolar/swpolar.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>

#include "analysis.hpp"
#include "channel.hpp"
#include "construction.hpp"
#include "core.hpp"
#include "decoder.hpp"
#include "encoder.hpp"
#include "sliding_window.hpp"

namespace {

thread_local std::string g_last_error;

swp_status fail(swp_status status, const char* message) {
    g_last_error = message;
    return status;
}

swp_status fail_current_exception() {
    try {
        throw;
    } catch (const std::invalid_argument& e) {
        return fail(SWP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::logic_error& e) {
        return fail(SWP_ERR_STATE, e.what());
    } catch (const std::runtime_error& e) {
        return fail(SWP_ERR_SEARCH_FAILED, e.what());
    } catch (const std::exception& e) {
        return fail(SWP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SWP_ERR_INTERNAL, "unknown error");
    }
}

swp::CodeConfig to_config(const swp_code_params& params) {
    swp::CodeConfig config;
    config.block_length = params.block_length;
    config.window_length = params.window_length;
    config.info_length = params.info_length;
    config.design = params.channel == SWP_CHANNEL_BEC
                        ? swp::DesignChannel::bec(params.erasure_prob)
                        : swp::DesignChannel::awgn(params.design_ebn0_db);
    return config;
}

swp::StrategyKind to_kind(swp_strategy strategy) {
    switch (strategy) {
    case SWP_STRATEGY_IND: return swp::StrategyKind::ind;
    case SWP_STRATEGY_FULL: return swp::StrategyKind::full;
    default: return swp::StrategyKind::sw;
    }
}

swp::DecodeOptions to_decode_options(const swp_decode_options* options) {
    swp::DecodeOptions out;
    if (!options)
        return out;
    out.algo = options->decoder == SWP_DECODER_SCL ? swp::DecoderAlgo::scl : swp::DecoderAlgo::sc;
    out.list_size = options->list_size == 0 ? 1 : options->list_size;
    out.mode = options->use_minsum ? swp::BoxplusMode::minsum : swp::BoxplusMode::exact;
    out.scope = options->list_scope == SWP_LIST_PER_WINDOW ? swp::ListScope::per_window
                                                           : swp::ListScope::carried;
    return out;
}

template <typename T>
swp_status copy_out(const std::vector<T>& values, T* out, size_t capacity, size_t* out_len) {
    if (out_len)
        *out_len = values.size();
    if (values.empty())
        return SWP_OK;
    if (!out)
        return fail(SWP_ERR_INVALID_ARGUMENT, "output array is null");
    if (capacity < values.size())
        return fail(SWP_ERR_BUFFER_TOO_SMALL, "output array too small");
    std::memcpy(out, values.data(), values.size() * sizeof(T));
    return SWP_OK;
}

} // namespace

struct swp_code {
    swp::CodeInstance instance;
};

struct swp_stream_decoder {
    swp::SlidingWindowDecoder sw;
    const swp_code* code;
    // IND streaming: each window is an independent block decode
    bool independent_blocks = false;
    std::uint32_t pushed = 0;
    swp::DecodeOptions options;
};

extern "C" {

const char* swp_last_error(void) {
    return g_last_error.c_str();
}

const char* swp_version(void) {
    return "swpolar 1.0.0";
}

swp_status swp_code_create(const swp_code_params* params, swp_code** out_code) {
    if (!params || !out_code)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    *out_code = nullptr;
    try {
        auto instance = swp::CodeInstance::build(to_config(*params), to_kind(params->strategy));
        *out_code = new swp_code{std::move(instance)};
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

void swp_code_destroy(swp_code* code) {
    delete code;
}

uint32_t swp_code_block_length(const swp_code* code) {
    return code ? code->instance.config().block_length : 0;
}

uint32_t swp_code_window_length(const swp_code* code) {
    return code ? code->instance.config().window_length : 0;
}

uint32_t swp_code_info_length(const swp_code* code) {
    return code ? code->instance.config().info_length : 0;
}

swp_status swp_code_info_set(const swp_code* code, uint32_t* out, size_t capacity, size_t* out_len) {
    if (!code)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null code handle");
    return copy_out(code->instance.info().indices(), out, capacity, out_len);
}

swp_status swp_code_frozen_set(const swp_code* code, uint32_t* out, size_t capacity, size_t* out_len) {
    if (!code)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null code handle");
    return copy_out(code->instance.frozen().indices(), out, capacity, out_len);
}

swp_status swp_code_reliability(const swp_code* code, double* out, size_t capacity, size_t* out_len) {
    if (!code)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null code handle");
    return copy_out(code->instance.profile().values, out, capacity, out_len);
}

swp_status swp_code_reliability_kind(const swp_code* code, swp_reliability_kind* out_kind) {
    if (!code || !out_kind)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    *out_kind = code->instance.profile().kind == swp::ReliabilityKind::erasure
                    ? SWP_RELIABILITY_ERASURE
                    : SWP_RELIABILITY_GA_MEAN;
    return SWP_OK;
}

swp_status swp_encode(const swp_code* code, const uint8_t* message, size_t message_len,
                      uint8_t* codeword, size_t codeword_capacity) {
    return swp_encode_with_partials(code, message, message_len, codeword, codeword_capacity,
                                    nullptr, 0);
}

swp_status swp_encode_with_partials(const swp_code* code, const uint8_t* message, size_t message_len,
                                    uint8_t* codeword, size_t codeword_capacity,
                                    uint8_t* partials, size_t partials_capacity) {
    if (!code || (!message && message_len > 0) || !codeword)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    const auto& instance = code->instance;
    const std::uint32_t n = instance.config().block_length;
    if (codeword_capacity < n)
        return fail(SWP_ERR_BUFFER_TOO_SMALL, "codeword array too small");
    try {
        const swp::BitVector msg(message, message + message_len);
        if (partials) {
            if (instance.kind() != swp::StrategyKind::sw)
                return fail(SWP_ERR_UNSUPPORTED, "partial codewords exist only for the sw strategy");
            if (partials_capacity < n)
                return fail(SWP_ERR_BUFFER_TOO_SMALL, "partials array too small");
            const swp::BitVector u = swp::build_input(msg, instance.info(), n);
            const auto result = swp::encode_accumulate(u, instance.config(), true);
            std::memcpy(codeword, result.codeword.data(), n);
            std::size_t offset = 0;
            for (const auto& block : result.partials) {
                std::memcpy(partials + offset, block.data(), block.size());
                offset += block.size();
            }
            return SWP_OK;
        }
        const swp::BitVector x = instance.encode(msg);
        std::memcpy(codeword, x.data(), n);
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

swp_status swp_decode(const swp_code* code, const double* llr, size_t llr_len,
                      const swp_decode_options* options, uint8_t* message_out,
                      size_t message_capacity) {
    if (!code || !llr)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    const std::uint32_t k = code->instance.config().info_length;
    if (message_capacity < k)
        return fail(SWP_ERR_BUFFER_TOO_SMALL, "message array too small");
    try {
        const swp::LlrVector y(llr, llr + llr_len);
        const swp::BitVector message = code->instance.decode_message(y, to_decode_options(options));
        if (k > 0)
            std::memcpy(message_out, message.data(), k);
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

swp_status swp_stream_decoder_create(const swp_code* code, const swp_decode_options* options,
                                     swp_stream_decoder** out_decoder) {
    if (!code || !out_decoder)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    *out_decoder = nullptr;
    if (code->instance.kind() == swp::StrategyKind::full)
        return fail(SWP_ERR_UNSUPPORTED, "streaming decode requires the sw or ind strategy");
    try {
        const swp::DecodeOptions decode = to_decode_options(options);
        swp::SwOptions sw_options{decode.mode,
                                  decode.algo == swp::DecoderAlgo::sc ? 1 : decode.list_size,
                                  decode.scope};
        auto* decoder = new swp_stream_decoder{
            swp::SlidingWindowDecoder(code->instance.config(), code->instance.info(), sw_options),
            code, code->instance.kind() == swp::StrategyKind::ind, 0, decode};
        *out_decoder = decoder;
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

void swp_stream_decoder_destroy(swp_stream_decoder* decoder) {
    delete decoder;
}

swp_status swp_stream_decoder_push(swp_stream_decoder* decoder, const double* window_llr,
                                   size_t window_len, uint8_t* bits_out, size_t bits_capacity,
                                   size_t* bits_written) {
    if (bits_written)
        *bits_written = 0;
    if (!decoder || !window_llr)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    try {
        const auto& config = decoder->code->instance.config();
        if (window_len != config.window_length)
            return fail(SWP_ERR_INVALID_ARGUMENT, "window must hold M LLRs");
        std::vector<swp::BitVector> blocks;
        if (decoder->independent_blocks) {
            if (decoder->pushed >= config.window_count())
                return fail(SWP_ERR_STATE, "frame already complete");
            const auto& block_design = decoder->code->instance.blocks()[decoder->pushed];
            const swp::IndexSet frozen =
                swp::IndexSet::complement_of(block_design.info, config.window_length);
            const swp::LlrVector y(window_llr, window_llr + window_len);
            const swp::DecodeOptions& opt = decoder->options;
            blocks.push_back(opt.algo == swp::DecoderAlgo::sc
                                 ? swp::sc_decode(y, frozen, opt.mode)
                                 : swp::scl_decode(y, frozen, opt.list_size, opt.mode).best);
            ++decoder->pushed;
        } else {
            blocks = decoder->sw.push_window({window_llr, window_len});
        }
        std::size_t written = 0;
        for (const auto& block : blocks) {
            if (written + block.size() > bits_capacity)
                return fail(SWP_ERR_BUFFER_TOO_SMALL, "bit output array too small");
            std::memcpy(bits_out + written, block.data(), block.size());
            written += block.size();
        }
        if (bits_written)
            *bits_written = written;
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

int swp_stream_decoder_finished(const swp_stream_decoder* decoder) {
    if (!decoder)
        return 0;
    if (decoder->independent_blocks)
        return decoder->pushed >= decoder->code->instance.config().window_count();
    return decoder->sw.finished() ? 1 : 0;
}

swp_status swp_stream_decoder_reset(swp_stream_decoder* decoder) {
    if (!decoder)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null decoder handle");
    decoder->sw.reset();
    decoder->pushed = 0;
    return SWP_OK;
}

swp_status swp_sc_bound(const swp_code_params* params, double channel_ebn0_db, double* out_bler) {
    if (!params || !out_bler)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    if (params->channel != SWP_CHANNEL_AWGN)
        return fail(SWP_ERR_UNSUPPORTED, "SC bound is defined for the AWGN channel");
    try {
        std::optional<double> design;
        if (std::isfinite(params->design_ebn0_db))
            design = params->design_ebn0_db;
        *out_bler = swp::strategy_sc_bound(to_config(*params), to_kind(params->strategy),
                                           channel_ebn0_db, design);
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

swp_status swp_target_snr(const swp_code_params* params, double target_bler, double* out_ebn0_db) {
    if (!params || !out_ebn0_db)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    if (params->channel != SWP_CHANNEL_AWGN)
        return fail(SWP_ERR_UNSUPPORTED, "target SNR search is defined for the AWGN channel");
    try {
        std::optional<double> design;
        if (std::isfinite(params->design_ebn0_db))
            design = params->design_ebn0_db;
        *out_ebn0_db = swp::target_snr(to_config(*params), to_kind(params->strategy), target_bler,
                                       design);
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

swp_status swp_simulate_bler(const swp_code* code, double channel_ebn0_db,
                             const swp_decode_options* decode_options,
                             const swp_sim_options* sim_options, swp_bler_point* out_point) {
    if (!code || !out_point)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    try {
        swp::StopRule stop;
        std::uint64_t seed = 0;
        std::uint32_t threads = 0;
        if (sim_options) {
            seed = sim_options->seed;
            threads = sim_options->threads;
            if (sim_options->max_frames)
                stop.max_frames = sim_options->max_frames;
            if (sim_options->max_errors)
                stop.max_errors = sim_options->max_errors;
        }
        const swp::BlerPoint point = swp::monte_carlo_bler(
            code->instance, to_decode_options(decode_options), channel_ebn0_db, stop, seed, threads);
        out_point->ebn0_db = point.ebn0_db;
        out_point->frames = point.frames;
        out_point->errors = point.errors;
        out_point->bler = point.bler;
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

swp_status swp_latency_steps(uint32_t block_length, uint32_t window_length, uint64_t* out_steps) {
    if (!out_steps)
        return fail(SWP_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out_steps = swp::latency_steps(block_length, window_length);
        return SWP_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

uint64_t swp_sweep_point_seed(uint64_t seed, uint64_t point_index) {
    return swp::sweep_point_seed(seed, point_index);
}

} // extern "C"
