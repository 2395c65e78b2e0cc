/* swpolar - sliding-window polar codes: construction, encoding, SC/SCL
 * decoding through a window of M < N symbols, analytic BLER bounds and a
 * Monte Carlo simulation harness.
 *
 * All functions return swp_status; swp_last_error() describes the most
 * recent failure on the calling thread. Objects are created and destroyed
 * through opaque handles; output arrays are caller-allocated.
 */
#ifndef SWPOLAR_H
#define SWPOLAR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swp_status {
    SWP_OK = 0,
    SWP_ERR_INVALID_ARGUMENT = 1,
    SWP_ERR_UNSUPPORTED = 2,
    SWP_ERR_STATE = 3,
    SWP_ERR_SEARCH_FAILED = 4,
    SWP_ERR_BUFFER_TOO_SMALL = 5,
    SWP_ERR_INTERNAL = 6
} swp_status;

typedef enum swp_strategy {
    SWP_STRATEGY_SW = 0,   /* coupled sliding-window code */
    SWP_STRATEGY_IND = 1,  /* S independent length-M codes */
    SWP_STRATEGY_FULL = 2  /* one length-N polar code */
} swp_strategy;

typedef enum swp_channel {
    SWP_CHANNEL_AWGN = 0,
    SWP_CHANNEL_BEC = 1
} swp_channel;

typedef enum swp_decoder {
    SWP_DECODER_SC = 0,
    SWP_DECODER_SCL = 1
} swp_decoder;

typedef enum swp_list_scope {
    SWP_LIST_CARRIED = 0,    /* survivors cross window boundaries */
    SWP_LIST_PER_WINDOW = 1  /* best path committed after each window */
} swp_list_scope;

typedef enum swp_reliability_kind {
    SWP_RELIABILITY_ERASURE = 0, /* lower is better */
    SWP_RELIABILITY_GA_MEAN = 1  /* higher is better */
} swp_reliability_kind;

typedef struct swp_code_params {
    uint32_t block_length;  /* N, power of two */
    uint32_t window_length; /* M, power of two, divides N */
    uint32_t info_length;   /* K */
    swp_strategy strategy;
    swp_channel channel;     /* design channel */
    double design_ebn0_db;   /* AWGN design point */
    double erasure_prob;     /* BEC design point */
} swp_code_params;

typedef struct swp_decode_options {
    swp_decoder decoder;
    uint32_t list_size;      /* SCL only, >= 1 */
    int use_minsum;          /* nonzero: min-sum boxplus instead of exact */
    swp_list_scope list_scope;
} swp_decode_options;

typedef struct swp_sim_options {
    uint64_t seed;
    uint64_t max_frames;     /* 0: default 10^7 */
    uint64_t max_errors;     /* 0: default 100 */
    uint32_t threads;        /* 0: hardware concurrency */
} swp_sim_options;

typedef struct swp_bler_point {
    double ebn0_db;
    uint64_t frames;
    uint64_t errors;
    double bler;
} swp_bler_point;

typedef struct swp_code swp_code;
typedef struct swp_stream_decoder swp_stream_decoder;

/* Thread-local message for the most recent error. */
const char* swp_last_error(void);

const char* swp_version(void);

/* -- construction ------------------------------------------------------- */

swp_status swp_code_create(const swp_code_params* params, swp_code** out_code);
void swp_code_destroy(swp_code* code);

uint32_t swp_code_block_length(const swp_code* code);
uint32_t swp_code_window_length(const swp_code* code);
uint32_t swp_code_info_length(const swp_code* code);

/* Index sets use global numbering (IND blocks offset by their window base).
 * Arrays must hold at least the set size; *out_len receives the count. */
swp_status swp_code_info_set(const swp_code* code, uint32_t* out, size_t capacity, size_t* out_len);
swp_status swp_code_frozen_set(const swp_code* code, uint32_t* out, size_t capacity, size_t* out_len);

swp_status swp_code_reliability(const swp_code* code, double* out, size_t capacity, size_t* out_len);
swp_status swp_code_reliability_kind(const swp_code* code, swp_reliability_kind* out_kind);

/* -- encoding ----------------------------------------------------------- */

/* message: K bits (one byte each), codeword: N bytes. */
swp_status swp_encode(const swp_code* code, const uint8_t* message, size_t message_len,
                      uint8_t* codeword, size_t codeword_capacity);

/* Also emits the S partial window codewords t^(1..S) (S*M bytes, SW only). */
swp_status swp_encode_with_partials(const swp_code* code, const uint8_t* message, size_t message_len,
                                    uint8_t* codeword, size_t codeword_capacity,
                                    uint8_t* partials, size_t partials_capacity);

/* -- decoding ----------------------------------------------------------- */

/* llr: N channel LLRs, message_out: K bytes. */
swp_status swp_decode(const swp_code* code, const double* llr, size_t llr_len,
                      const swp_decode_options* options, uint8_t* message_out,
                      size_t message_capacity);

/* Streaming decode, one window of M LLRs at a time. bits_out receives the
 * input-vector windows decided by this push (multiples of M bits);
 * positions are consecutive from where the previous push stopped.
 * SC and per-window list decoding emit incrementally; a carried list emits
 * everything on the final push. Not available for the FULL strategy. */
swp_status swp_stream_decoder_create(const swp_code* code, const swp_decode_options* options,
                                     swp_stream_decoder** out_decoder);
void swp_stream_decoder_destroy(swp_stream_decoder* decoder);
swp_status swp_stream_decoder_push(swp_stream_decoder* decoder, const double* window_llr,
                                   size_t window_len, uint8_t* bits_out, size_t bits_capacity,
                                   size_t* bits_written);
int swp_stream_decoder_finished(const swp_stream_decoder* decoder);
swp_status swp_stream_decoder_reset(swp_stream_decoder* decoder);

/* -- analysis ----------------------------------------------------------- */

/* GA approximation of the SC block error rate at a channel Eb/N0. The code
 * is designed at params->design_ebn0_db when finite, else at the channel
 * point. AWGN only. */
swp_status swp_sc_bound(const swp_code_params* params, double channel_ebn0_db, double* out_bler);

/* Eb/N0 (dB) where the SC bound crosses target_bler, bisected on [-2, 12]. */
swp_status swp_target_snr(const swp_code_params* params, double target_bler, double* out_ebn0_db);

/* Monte Carlo BLER of a designed code at one channel point. */
swp_status swp_simulate_bler(const swp_code* code, double channel_ebn0_db,
                             const swp_decode_options* decode_options,
                             const swp_sim_options* sim_options, swp_bler_point* out_point);

/* Time-step latency of the sliding-window SC schedule, 2N - 2. */
swp_status swp_latency_steps(uint32_t block_length, uint32_t window_length, uint64_t* out_steps);

/* Deterministic per-point sub-seed for SNR sweeps. */
uint64_t swp_sweep_point_seed(uint64_t seed, uint64_t point_index);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SWPOLAR_H */
