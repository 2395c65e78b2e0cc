// Command-line front end for the swpolar library. Talks to the library
// exclusively through the C API in swpolar/swpolar.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swpolar/swpolar.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonSpec {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::uint32_t k = 0;
    std::string strategy = "sw";
    std::string channel = "awgn";
    double design_snr = 0.0;
    bool design_snr_set = false;
    double erasure_prob = 0.5;
    std::string decoder = "sc";
    std::uint32_t list_size = 8;
    bool minsum = false;
    std::string list_scope = "carried";
    std::uint64_t seed = 1;
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t max_errors = 100;
    std::string out;
};

void add_code_flags(CLI::App* cmd, CommonSpec& spec) {
    cmd->add_option("--n", spec.n, "code length N (power of two)")->required();
    cmd->add_option("--m", spec.m, "window length M (power of two)")->required();
    cmd->add_option("--k", spec.k, "information length K")->required();
    cmd->add_option("--strategy", spec.strategy, "transmission strategy")
        ->check(CLI::IsMember({"sw", "ind", "full"}));
    cmd->add_option("--channel", spec.channel, "design channel")
        ->check(CLI::IsMember({"awgn", "bec"}));
    cmd->add_option("--design-snr", spec.design_snr, "design Eb/N0 in dB (AWGN)")
        ->each([&spec](const std::string&) { spec.design_snr_set = true; });
    cmd->add_option("--erasure-prob", spec.erasure_prob, "design erasure probability (BEC)");
}

// Expands `--config FILE` (key=value lines, keys matching long flag names)
// into defaults placed ahead of the explicit flags; explicit flags win.
bool preprocess_config(std::vector<std::string>& tokens, std::string& error) {
    std::string path;
    for (std::size_t i = 0; i < tokens.size();) {
        if (tokens[i] == "--config") {
            if (i + 1 >= tokens.size()) {
                error = "--config requires a file path";
                return false;
            }
            path = tokens[i + 1];
            tokens.erase(tokens.begin() + i, tokens.begin() + i + 2);
        } else if (tokens[i].rfind("--config=", 0) == 0) {
            path = tokens[i].substr(9);
            tokens.erase(tokens.begin() + i);
        } else {
            ++i;
        }
    }
    if (path.empty())
        return true;

    std::ifstream in(path);
    if (!in) {
        error = "cannot open config file " + path;
        return false;
    }

    std::set<std::string> given;
    for (const std::string& token : tokens)
        if (token.rfind("--", 0) == 0)
            given.insert(token.substr(0, token.find('=')));

    std::vector<std::string> derived;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            error = "config " + path + ":" + std::to_string(line_no) + ": expected key=value";
            return false;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            error = "config " + path + ":" + std::to_string(line_no) + ": empty key";
            return false;
        }
        const std::string flag = "--" + key;
        if (given.count(flag))
            continue; // explicit flag wins
        if (value == "true") {
            derived.push_back(flag);
        } else if (value == "false") {
            // absent flag
        } else {
            derived.push_back(flag);
            derived.push_back(value);
        }
    }

    // insert after the subcommand token so the defaults live in its scope
    const std::size_t at = tokens.empty() ? 0 : 1;
    tokens.insert(tokens.begin() + at, derived.begin(), derived.end());
    return true;
}

void add_decoder_flags(CLI::App* cmd, CommonSpec& spec) {
    cmd->add_option("--decoder", spec.decoder, "decoding algorithm")
        ->check(CLI::IsMember({"sc", "scl"}));
    cmd->add_option("--list-size", spec.list_size, "SCL list size");
    cmd->add_flag("--minsum", spec.minsum, "min-sum boxplus instead of exact");
    cmd->add_option("--list-scope", spec.list_scope, "list handling across windows")
        ->check(CLI::IsMember({"carried", "per_window"}));
}

swp_code_params make_params(const CommonSpec& spec, std::optional<double> design_override = {}) {
    swp_code_params params{};
    params.block_length = spec.n;
    params.window_length = spec.m;
    params.info_length = spec.k;
    params.strategy = spec.strategy == "ind"    ? SWP_STRATEGY_IND
                      : spec.strategy == "full" ? SWP_STRATEGY_FULL
                                                : SWP_STRATEGY_SW;
    params.channel = spec.channel == "bec" ? SWP_CHANNEL_BEC : SWP_CHANNEL_AWGN;
    params.design_ebn0_db = design_override.value_or(spec.design_snr);
    params.erasure_prob = spec.erasure_prob;
    return params;
}

swp_decode_options make_decode_options(const CommonSpec& spec) {
    swp_decode_options options{};
    options.decoder = spec.decoder == "scl" ? SWP_DECODER_SCL : SWP_DECODER_SC;
    options.list_size = spec.list_size;
    options.use_minsum = spec.minsum ? 1 : 0;
    options.list_scope = spec.list_scope == "per_window" ? SWP_LIST_PER_WINDOW : SWP_LIST_CARRIED;
    return options;
}

std::uint32_t worker_threads() {
    if (const char* env = std::getenv("POLAR_SWIN_THREADS")) {
        const long value = std::strtol(env, nullptr, 10);
        if (value > 0)
            return static_cast<std::uint32_t>(value);
    }
    return 0; // library default: hardware concurrency
}

int fail_status(swp_status status) {
    std::cerr << "error: " << swp_last_error() << "\n";
    return status == SWP_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
}

int fail_message(const std::string& message, int code = kExitFailure) {
    std::cerr << "error: " << message << "\n";
    return code;
}

struct CodeHandle {
    swp_code* code = nullptr;
    ~CodeHandle() { swp_code_destroy(code); }
};

struct StreamHandle {
    swp_stream_decoder* decoder = nullptr;
    ~StreamHandle() { swp_stream_decoder_destroy(decoder); }
};

bool write_file(const std::string& path, const std::string& content, std::string& error) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        error = "cannot open output file " + path;
        return false;
    }
    out << content;
    out.flush();
    if (!out) {
        error = "cannot write output file " + path;
        return false;
    }
    return true;
}

bool read_bit_line(const std::string& path, std::vector<std::uint8_t>& bits, std::string& error) {
    std::ifstream in(path);
    if (!in) {
        error = "cannot open input file " + path;
        return false;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        bits.clear();
        for (char c : line) {
            if (c == '0' || c == '1')
                bits.push_back(static_cast<std::uint8_t>(c - '0'));
            else if (c != '\r' && c != ' ' && c != '\t') {
                error = "invalid bit character '" + std::string(1, c) + "' in " + path;
                return false;
            }
        }
        return true;
    }
    error = "no bit line found in " + path;
    return false;
}

std::string bits_to_line(const std::uint8_t* bits, std::size_t count) {
    std::string line(count, '0');
    for (std::size_t i = 0; i < count; ++i)
        line[i] = bits[i] ? '1' : '0';
    return line;
}

bool read_llr_file(const std::string& path, std::vector<double>& llr, std::string& error) {
    std::ifstream in(path);
    if (!in) {
        error = "cannot open input file " + path;
        return false;
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        try {
            std::size_t pos = 0;
            const double value = std::stod(line, &pos);
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r' || line[pos] == '\t'))
                ++pos;
            if (pos != line.size())
                throw std::invalid_argument("trailing characters");
            llr.push_back(value);
        } catch (const std::exception&) {
            error = "malformed LLR at " + path + ":" + std::to_string(line_no);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- construct

int run_construct(const CommonSpec& spec) {
    const swp_code_params params = make_params(spec);
    CodeHandle handle;
    if (swp_status status = swp_code_create(&params, &handle.code); status != SWP_OK)
        return fail_status(status);

    std::vector<std::uint32_t> info(spec.n), frozen(spec.n);
    std::vector<double> reliability(spec.n);
    std::size_t info_len = 0, frozen_len = 0, rel_len = 0;
    if (swp_status s = swp_code_info_set(handle.code, info.data(), info.size(), &info_len); s != SWP_OK)
        return fail_status(s);
    if (swp_status s = swp_code_frozen_set(handle.code, frozen.data(), frozen.size(), &frozen_len);
        s != SWP_OK)
        return fail_status(s);
    if (swp_status s = swp_code_reliability(handle.code, reliability.data(), reliability.size(), &rel_len);
        s != SWP_OK)
        return fail_status(s);

    const std::string prefix = spec.out.empty() ? "code" : spec.out;
    std::ostringstream profile_text, frozen_text, info_text;
    for (std::size_t i = 0; i < rel_len; ++i) {
        char line[64];
        std::snprintf(line, sizeof(line), "%zu %.17g\n", i, reliability[i]);
        profile_text << line;
    }
    for (std::size_t i = 0; i < frozen_len; ++i)
        frozen_text << frozen[i] << "\n";
    for (std::size_t i = 0; i < info_len; ++i)
        info_text << info[i] << "\n";

    std::string error;
    if (!write_file(prefix + ".profile", profile_text.str(), error) ||
        !write_file(prefix + ".frozen", frozen_text.str(), error) ||
        !write_file(prefix + ".info", info_text.str(), error))
        return fail_message(error);

    std::cout << "frozen " << frozen_len << "\ninfo " << info_len << "\n";
    return 0;
}

// ------------------------------------------------------------------- encode

int run_encode(const CommonSpec& spec, const std::string& in_path, const std::string& partials_path) {
    const swp_code_params params = make_params(spec);
    CodeHandle handle;
    if (swp_status status = swp_code_create(&params, &handle.code); status != SWP_OK)
        return fail_status(status);

    std::vector<std::uint8_t> message;
    std::string error;
    if (!read_bit_line(in_path, message, error))
        return fail_message(error);
    if (message.size() != spec.k)
        return fail_message("message: expected " + std::to_string(spec.k) + " bits, got " +
                                std::to_string(message.size()),
                            kExitUsage);

    std::vector<std::uint8_t> codeword(spec.n);
    std::vector<std::uint8_t> partials(spec.n);
    swp_status status;
    if (!partials_path.empty())
        status = swp_encode_with_partials(handle.code, message.data(), message.size(),
                                          codeword.data(), codeword.size(), partials.data(),
                                          partials.size());
    else
        status = swp_encode(handle.code, message.data(), message.size(), codeword.data(),
                            codeword.size());
    if (status != SWP_OK)
        return fail_status(status);

    if (!spec.out.empty()) {
        if (!write_file(spec.out, bits_to_line(codeword.data(), spec.n) + "\n", error))
            return fail_message(error);
    } else {
        std::cout << bits_to_line(codeword.data(), spec.n) << "\n";
    }
    if (!partials_path.empty()) {
        std::ostringstream text;
        for (std::uint32_t s = 0; s < spec.n / spec.m; ++s)
            text << bits_to_line(partials.data() + std::size_t{s} * spec.m, spec.m) << "\n";
        if (!write_file(partials_path, text.str(), error))
            return fail_message(error);
    }
    return 0;
}

// ------------------------------------------------------------------- decode

int run_decode(const CommonSpec& spec, const std::string& in_path, bool streaming) {
    const swp_code_params params = make_params(spec);
    const swp_decode_options options = make_decode_options(spec);
    if (streaming && options.decoder == SWP_DECODER_SCL && options.list_scope == SWP_LIST_CARRIED)
        return fail_message("streaming: SCL requires --list-scope per_window", kExitUsage);
    if (streaming && spec.strategy == "full")
        return fail_message("streaming: requires --strategy sw or ind", kExitUsage);

    CodeHandle handle;
    if (swp_status status = swp_code_create(&params, &handle.code); status != SWP_OK)
        return fail_status(status);

    std::vector<double> llr;
    std::string error;
    if (!read_llr_file(in_path, llr, error))
        return fail_message(error);
    if (llr.size() != spec.n)
        return fail_message("llr input: expected " + std::to_string(spec.n) + " values, got " +
                                std::to_string(llr.size()),
                            kExitUsage);

    std::vector<std::uint32_t> info(spec.n);
    std::size_t info_len = 0;
    if (swp_status s = swp_code_info_set(handle.code, info.data(), info.size(), &info_len); s != SWP_OK)
        return fail_status(s);

    std::vector<std::uint8_t> message;
    if (streaming) {
        StreamHandle stream;
        if (swp_status s = swp_stream_decoder_create(handle.code, &options, &stream.decoder);
            s != SWP_OK)
            return fail_status(s);
        std::vector<std::uint8_t> decided;
        std::vector<std::uint8_t> chunk(spec.n);
        const std::uint32_t windows = spec.n / spec.m;
        for (std::uint32_t s = 0; s < windows; ++s) {
            std::size_t written = 0;
            if (swp_status st = swp_stream_decoder_push(stream.decoder,
                                                        llr.data() + std::size_t{s} * spec.m, spec.m,
                                                        chunk.data(), chunk.size(), &written);
                st != SWP_OK)
                return fail_status(st);
            const std::size_t push_base = decided.size(); // global index of chunk[0]
            for (std::size_t w = 0; w + spec.m <= written; w += spec.m) {
                const std::size_t base = push_base + w;
                std::ostringstream line;
                for (std::size_t i = 0; i < info_len; ++i) {
                    const std::uint32_t idx = info[i];
                    if (idx >= base && idx < base + spec.m)
                        line << (chunk[idx - push_base] ? '1' : '0');
                }
                std::cout << "window " << (base / spec.m + 1) << ": " << line.str() << "\n";
            }
            decided.insert(decided.end(), chunk.begin(), chunk.begin() + written);
        }
        message.reserve(info_len);
        for (std::size_t i = 0; i < info_len; ++i)
            message.push_back(decided[info[i]]);
    } else {
        message.resize(spec.k);
        if (swp_status s = swp_decode(handle.code, llr.data(), llr.size(), &options, message.data(),
                                      message.size());
            s != SWP_OK)
            return fail_status(s);
    }

    const std::string line = bits_to_line(message.data(), message.size()) + "\n";
    if (!spec.out.empty()) {
        if (!write_file(spec.out, line, error))
            return fail_message(error);
    } else {
        std::cout << line;
    }
    return 0;
}

// -------------------------------------------------------------------- sweep

int run_sweep(const CommonSpec& spec, const std::vector<double>& ebn0, bool bound_only) {
    if (spec.channel != "awgn")
        return fail_message("sweep: --channel must be awgn", kExitUsage);

    const swp_decode_options options = make_decode_options(spec);
    std::ostringstream csv;
    csv << "strategy,decoder,list_size,N,M,K,ebn0_db,source,frames,errors,bler\n";

    double prev_gamma = 0.0, prev_bler = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < ebn0.size(); ++i) {
        const double gamma = ebn0[i];
        double bler = 0.0;
        std::uint64_t frames = 0, errors = 0;
        if (bound_only) {
            swp_code_params params = make_params(spec, spec.design_snr_set
                                                           ? std::optional<double>(spec.design_snr)
                                                           : std::optional<double>(gamma));
            if (swp_status s = swp_sc_bound(&params, gamma, &bler); s != SWP_OK)
                return fail_status(s);
        } else {
            swp_code_params params = make_params(spec, spec.design_snr_set
                                                           ? std::optional<double>(spec.design_snr)
                                                           : std::optional<double>(gamma));
            CodeHandle handle;
            if (swp_status s = swp_code_create(&params, &handle.code); s != SWP_OK)
                return fail_status(s);
            swp_sim_options sim{};
            sim.seed = swp_sweep_point_seed(spec.seed, i);
            sim.max_frames = spec.max_frames;
            sim.max_errors = spec.max_errors;
            sim.threads = worker_threads();
            swp_bler_point point{};
            if (swp_status s = swp_simulate_bler(handle.code, gamma, &options, &sim, &point);
                s != SWP_OK)
                return fail_status(s);
            bler = point.bler;
            frames = point.frames;
            errors = point.errors;
        }
        char row[256];
        std::snprintf(row, sizeof(row), "%s,%s,%u,%u,%u,%u,%.6g,%s,%llu,%llu,%.6e\n",
                      spec.strategy.c_str(), spec.decoder.c_str(),
                      spec.decoder == "sc" ? 1u : spec.list_size, spec.n, spec.m, spec.k, gamma,
                      bound_only ? "bound" : "simulation", static_cast<unsigned long long>(frames),
                      static_cast<unsigned long long>(errors), bler);
        csv << row;
        std::cout << row << std::flush;

        if (!bound_only && have_prev && gamma > prev_gamma && bler > prev_bler)
            std::cerr << "warning: BLER rose from " << prev_bler << " to " << bler
                      << " between " << prev_gamma << " and " << gamma
                      << " dB (Monte Carlo noise?)\n";
        have_prev = true;
        prev_gamma = gamma;
        prev_bler = bler;
    }

    if (!spec.out.empty()) {
        std::string error;
        if (!write_file(spec.out, csv.str(), error))
            return fail_message(error);
    }
    return 0;
}

// --------------------------------------------------------------- target-snr

int run_target_snr(const CommonSpec& spec, double target_bler) {
    if (spec.channel != "awgn")
        return fail_message("target-snr: --channel must be awgn", kExitUsage);
    swp_code_params params = make_params(spec);
    if (!spec.design_snr_set)
        params.design_ebn0_db = std::nan(""); // design tracks the channel
    double gamma = 0.0;
    if (swp_status s = swp_target_snr(&params, target_bler, &gamma); s != SWP_OK)
        return fail_status(s);
    char line[64];
    std::snprintf(line, sizeof(line), "%.4f\n", gamma);
    std::cout << line;
    if (!spec.out.empty()) {
        std::string error;
        if (!write_file(spec.out, line, error))
            return fail_message(error);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sliding-window polar codes: construction, coding, bounds and simulation"};
    app.require_subcommand(1);

    CommonSpec spec;
    std::string in_path, partials_path;
    bool streaming = false;
    bool bound_only = false;
    std::vector<double> ebn0;
    double target_bler = 1e-3;

    CLI::App* construct = app.add_subcommand("construct", "design a code and emit profile and index sets");
    add_code_flags(construct, spec);
    construct->add_option("--out", spec.out, "output file prefix");

    CLI::App* encode = app.add_subcommand("encode", "encode a message file");
    add_code_flags(encode, spec);
    encode->add_option("--in", in_path, "message file (K bits as 0/1 characters)")->required();
    encode->add_option("--out", spec.out, "codeword file (defaults to stdout)");
    encode->add_option("--emit-partials", partials_path, "also write the S partial window codewords");

    CLI::App* decode = app.add_subcommand("decode", "decode a channel LLR file");
    add_code_flags(decode, spec);
    add_decoder_flags(decode, spec);
    decode->add_option("--in", in_path, "LLR file, one decimal value per line")->required();
    decode->add_option("--out", spec.out, "decoded message file (defaults to stdout)");
    decode->add_flag("--streaming", streaming, "decode window by window, emitting decisions per window");

    CLI::App* sweep = app.add_subcommand("sweep", "BLER over an Eb/N0 grid (simulation or bounds)");
    add_code_flags(sweep, spec);
    add_decoder_flags(sweep, spec);
    sweep->add_option("--ebn0", ebn0, "Eb/N0 grid in dB")->required()->delimiter(',');
    sweep->add_option("--seed", spec.seed, "simulation seed");
    sweep->add_option("--max-frames", spec.max_frames, "frame cap per point");
    sweep->add_option("--max-errors", spec.max_errors, "frame-error target per point");
    sweep->add_flag("--bound-only", bound_only, "emit analytic SC bounds, no simulation");
    sweep->add_option("--out", spec.out, "CSV output file");

    CLI::App* target = app.add_subcommand("target-snr", "Eb/N0 where the SC bound reaches a target BLER");
    add_code_flags(target, spec);
    target->add_option("--target-bler", target_bler, "target block error rate");
    target->add_option("--out", spec.out, "output file");

    app.footer("Any subcommand accepts --config FILE with key=value defaults "
               "(keys are long flag names); explicit flags win.");

    std::vector<std::string> tokens(argv + 1, argv + argc);
    std::string config_error;
    if (!preprocess_config(tokens, config_error))
        return fail_message(config_error, kExitUsage);
    std::vector<const char*> argv2;
    argv2.push_back(argv[0]);
    for (const std::string& token : tokens)
        argv2.push_back(token.c_str());

    try {
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (construct->parsed())
            return run_construct(spec);
        if (encode->parsed())
            return run_encode(spec, in_path, partials_path);
        if (decode->parsed())
            return run_decode(spec, in_path, streaming);
        if (sweep->parsed())
            return run_sweep(spec, ebn0, bound_only);
        if (target->parsed())
            return run_target_snr(spec, target_bler);
    } catch (const std::exception& e) {
        return fail_message(e.what());
    }
    return 0;
}
