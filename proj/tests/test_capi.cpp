#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "swpolar/swpolar.h"

namespace {

swp_code_params sw_params(uint32_t n, uint32_t m, uint32_t k, double design_db = 1.0) {
    swp_code_params params{};
    params.block_length = n;
    params.window_length = m;
    params.info_length = k;
    params.strategy = SWP_STRATEGY_SW;
    params.channel = SWP_CHANNEL_AWGN;
    params.design_ebn0_db = design_db;
    params.erasure_prob = 0.5;
    return params;
}

} // namespace

TEST_CASE("code lifecycle and queries") {
    const swp_code_params params = sw_params(16, 4, 8);
    swp_code* code = nullptr;
    REQUIRE(swp_code_create(&params, &code) == SWP_OK);
    REQUIRE(code != nullptr);
    CHECK(swp_code_block_length(code) == 16);
    CHECK(swp_code_window_length(code) == 4);
    CHECK(swp_code_info_length(code) == 8);

    std::vector<uint32_t> info(16), frozen(16);
    size_t info_len = 0, frozen_len = 0;
    CHECK(swp_code_info_set(code, info.data(), info.size(), &info_len) == SWP_OK);
    CHECK(swp_code_frozen_set(code, frozen.data(), frozen.size(), &frozen_len) == SWP_OK);
    CHECK(info_len == 8);
    CHECK(frozen_len == 8);

    std::vector<double> reliability(16);
    size_t rel_len = 0;
    CHECK(swp_code_reliability(code, reliability.data(), reliability.size(), &rel_len) == SWP_OK);
    CHECK(rel_len == 16);
    swp_reliability_kind kind;
    CHECK(swp_code_reliability_kind(code, &kind) == SWP_OK);
    CHECK(kind == SWP_RELIABILITY_GA_MEAN);

    swp_code_destroy(code);
}

TEST_CASE("invalid parameters produce status codes and messages") {
    swp_code_params params = sw_params(16, 4, 20); // K > N
    swp_code* code = nullptr;
    CHECK(swp_code_create(&params, &code) == SWP_ERR_INVALID_ARGUMENT);
    CHECK(code == nullptr);
    CHECK(std::strlen(swp_last_error()) > 0);
    CHECK(std::string(swp_last_error()).find("K") != std::string::npos);

    params = sw_params(12, 4, 4); // N not a power of two
    CHECK(swp_code_create(&params, &code) == SWP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("encode/decode roundtrip through the C surface") {
    const swp_code_params params = sw_params(16, 4, 8);
    swp_code* code = nullptr;
    REQUIRE(swp_code_create(&params, &code) == SWP_OK);

    const std::vector<uint8_t> message{1, 0, 1, 1, 0, 0, 1, 0};
    std::vector<uint8_t> codeword(16);
    REQUIRE(swp_encode(code, message.data(), message.size(), codeword.data(), codeword.size()) ==
            SWP_OK);

    std::vector<double> llr(16);
    for (size_t i = 0; i < 16; ++i)
        llr[i] = codeword[i] ? -1e9 : 1e9;

    swp_decode_options options{};
    options.decoder = SWP_DECODER_SCL;
    options.list_size = 4;
    std::vector<uint8_t> decoded(8);
    REQUIRE(swp_decode(code, llr.data(), llr.size(), &options, decoded.data(), decoded.size()) ==
            SWP_OK);
    CHECK(decoded == message);

    // buffer too small is reported, not truncated
    CHECK(swp_decode(code, llr.data(), llr.size(), &options, decoded.data(), 4) ==
          SWP_ERR_BUFFER_TOO_SMALL);

    swp_code_destroy(code);
}

TEST_CASE("partial codewords follow the suffix accumulation") {
    const swp_code_params params = sw_params(8, 2, 8);
    swp_code* code = nullptr;
    REQUIRE(swp_code_create(&params, &code) == SWP_OK);

    const std::vector<uint8_t> message{1, 0, 1, 1, 0, 1, 0, 0};
    std::vector<uint8_t> codeword(8), partials(8);
    REQUIRE(swp_encode_with_partials(code, message.data(), message.size(), codeword.data(),
                                     codeword.size(), partials.data(), partials.size()) == SWP_OK);

    // window s of the codeword equals the xor of partials s..S
    for (int s = 0; s < 4; ++s)
        for (int j = 0; j < 2; ++j) {
            uint8_t acc = 0;
            for (int r = s; r < 4; ++r)
                acc ^= partials[2 * r + j];
            CHECK(codeword[2 * s + j] == acc);
        }
    swp_code_destroy(code);
}

TEST_CASE("streaming decoder emits windows incrementally") {
    const swp_code_params params = sw_params(16, 4, 8);
    swp_code* code = nullptr;
    REQUIRE(swp_code_create(&params, &code) == SWP_OK);

    const std::vector<uint8_t> message{0, 1, 1, 0, 1, 0, 0, 1};
    std::vector<uint8_t> codeword(16);
    REQUIRE(swp_encode(code, message.data(), message.size(), codeword.data(), codeword.size()) ==
            SWP_OK);
    std::vector<double> llr(16);
    for (size_t i = 0; i < 16; ++i)
        llr[i] = codeword[i] ? -1e9 : 1e9;

    std::vector<uint8_t> batch(8);
    REQUIRE(swp_decode(code, llr.data(), llr.size(), nullptr, batch.data(), batch.size()) == SWP_OK);

    swp_stream_decoder* stream = nullptr;
    REQUIRE(swp_stream_decoder_create(code, nullptr, &stream) == SWP_OK);
    std::vector<uint8_t> bits(16);
    std::vector<uint8_t> collected;
    for (int s = 0; s < 4; ++s) {
        size_t written = 0;
        REQUIRE(swp_stream_decoder_push(stream, llr.data() + 4 * s, 4, bits.data(), bits.size(),
                                        &written) == SWP_OK);
        collected.insert(collected.end(), bits.begin(), bits.begin() + written);
        CHECK(swp_stream_decoder_finished(stream) == (s == 3 ? 1 : 0));
    }
    REQUIRE(collected.size() == 16);

    // extract message bits from the decisions
    std::vector<uint32_t> info(16);
    size_t info_len = 0;
    REQUIRE(swp_code_info_set(code, info.data(), info.size(), &info_len) == SWP_OK);
    std::vector<uint8_t> streamed;
    for (size_t i = 0; i < info_len; ++i)
        streamed.push_back(collected[info[i]]);
    CHECK(streamed == std::vector<uint8_t>(batch.begin(), batch.end()));

    // pushing past the end is a state error
    size_t written = 0;
    CHECK(swp_stream_decoder_push(stream, llr.data(), 4, bits.data(), bits.size(), &written) ==
          SWP_ERR_STATE);
    CHECK(swp_stream_decoder_reset(stream) == SWP_OK);
    REQUIRE(swp_stream_decoder_push(stream, llr.data(), 4, bits.data(), bits.size(), &written) ==
            SWP_OK);
    CHECK(written == 0);

    swp_stream_decoder_destroy(stream);
    swp_code_destroy(code);
}

TEST_CASE("independent blocks decode window by window") {
    swp_code_params params = sw_params(16, 4, 8, 4.0);
    params.strategy = SWP_STRATEGY_IND;
    swp_code* code = nullptr;
    REQUIRE(swp_code_create(&params, &code) == SWP_OK);

    const std::vector<uint8_t> message{1, 1, 0, 1, 0, 0, 1, 0};
    std::vector<uint8_t> codeword(16);
    REQUIRE(swp_encode(code, message.data(), message.size(), codeword.data(), codeword.size()) ==
            SWP_OK);
    std::vector<double> llr(16);
    for (size_t i = 0; i < 16; ++i)
        llr[i] = codeword[i] ? -1e9 : 1e9;

    std::vector<uint8_t> batch(8);
    REQUIRE(swp_decode(code, llr.data(), llr.size(), nullptr, batch.data(), batch.size()) == SWP_OK);
    CHECK(batch == message);

    swp_stream_decoder* stream = nullptr;
    REQUIRE(swp_stream_decoder_create(code, nullptr, &stream) == SWP_OK);
    std::vector<uint8_t> bits(16), collected;
    for (int s = 0; s < 4; ++s) {
        size_t written = 0;
        REQUIRE(swp_stream_decoder_push(stream, llr.data() + 4 * s, 4, bits.data(), bits.size(),
                                        &written) == SWP_OK);
        CHECK(written == 4); // every block is final immediately
        collected.insert(collected.end(), bits.begin(), bits.begin() + written);
    }
    CHECK(swp_stream_decoder_finished(stream) == 1);

    std::vector<uint32_t> info(16);
    size_t info_len = 0;
    REQUIRE(swp_code_info_set(code, info.data(), info.size(), &info_len) == SWP_OK);
    std::vector<uint8_t> streamed;
    for (size_t i = 0; i < info_len; ++i)
        streamed.push_back(collected[info[i]]);
    CHECK(streamed == message);

    swp_stream_decoder_destroy(stream);
    swp_code_destroy(code);
}

TEST_CASE("streaming rejects the FULL strategy") {
    swp_code_params params = sw_params(16, 16, 8);
    params.strategy = SWP_STRATEGY_FULL;
    swp_code* code = nullptr;
    REQUIRE(swp_code_create(&params, &code) == SWP_OK);
    swp_stream_decoder* stream = nullptr;
    CHECK(swp_stream_decoder_create(code, nullptr, &stream) == SWP_ERR_UNSUPPORTED);
    swp_code_destroy(code);
}

TEST_CASE("bounds, target snr and latency") {
    swp_code_params params = sw_params(64, 16, 16);
    params.design_ebn0_db = std::nan(""); // design tracks the channel
    double bler = 0.0;
    REQUIRE(swp_sc_bound(&params, 2.0, &bler) == SWP_OK);
    CHECK(bler > 0.0);
    CHECK(bler <= 1.0);

    double gamma = 0.0;
    REQUIRE(swp_target_snr(&params, 1e-3, &gamma) == SWP_OK);
    double at_gamma = 0.0;
    REQUIRE(swp_sc_bound(&params, gamma, &at_gamma) == SWP_OK);
    CHECK(std::fabs(std::log10(at_gamma) - std::log10(1e-3)) < 0.05);

    uint64_t steps = 0;
    REQUIRE(swp_latency_steps(1024, 128, &steps) == SWP_OK);
    CHECK(steps == 2046);
    CHECK(swp_latency_steps(12, 4, &steps) == SWP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("simulation through the C surface is deterministic") {
    const swp_code_params params = sw_params(32, 8, 8, 1.0);
    swp_code* code = nullptr;
    REQUIRE(swp_code_create(&params, &code) == SWP_OK);

    swp_sim_options sim{};
    sim.seed = 77;
    sim.max_frames = 512;
    sim.max_errors = 40;
    swp_bler_point a{}, b{};
    REQUIRE(swp_simulate_bler(code, 1.0, nullptr, &sim, &a) == SWP_OK);
    sim.threads = 2;
    REQUIRE(swp_simulate_bler(code, 1.0, nullptr, &sim, &b) == SWP_OK);
    CHECK(a.frames == b.frames);
    CHECK(a.errors == b.errors);
    CHECK(a.bler == b.bler);

    swp_code_destroy(code);
}

TEST_CASE("sweep point seeds are deterministic and distinct") {
    CHECK(swp_sweep_point_seed(1, 0) == swp_sweep_point_seed(1, 0));
    CHECK(swp_sweep_point_seed(1, 0) != swp_sweep_point_seed(1, 1));
    CHECK(swp_sweep_point_seed(1, 0) != swp_sweep_point_seed(2, 0));
}

TEST_CASE("version string") {
    CHECK(std::string(swp_version()).find("swpolar") != std::string::npos);
}
