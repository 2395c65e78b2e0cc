#include "construction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace swp {

namespace {

// Piece boundaries sit on the exact crossings so the fit is continuous to
// machine precision and strictly decreasing everywhere:
//   [0, 0.8679)      exp(0.0564 x^2 - 0.4856 x)
//   [0.8679, 14.394) exp(0.0218 - 0.4527 x^0.86)
//   [14.394, inf)    sqrt(pi/x) (1 - 10/(7x)) exp(-x/4)
constexpr double kPhiPivot1 = 0.86786123908513468;
constexpr double kPhiPivot1Value = 0.6845771783737814;
constexpr double kPhiPivot2 = 14.394352942168519;
constexpr double kPhiPivot2Value = 0.011514322819004623;

constexpr double kQuadA = 0.0564;
constexpr double kQuadB = 0.48560;
constexpr double kPowScale = 0.4527;
constexpr double kPowExp = 0.86;
constexpr double kPowOffset = 0.0218;

// log phi, defined for every finite x (the asymptotic tail never underflows)
double phi_log(double x) {
    if (x < kPhiPivot1)
        return kQuadA * x * x - kQuadB * x;
    if (x < kPhiPivot2)
        return kPowOffset - kPowScale * std::pow(x, kPowExp);
    return 0.5 * std::log(std::numbers::pi / x) + std::log1p(-10.0 / (7.0 * x)) - x / 4.0;
}

// inverse of phi_log; bisection only in the asymptotic tail
double phi_log_inv(double log_y) {
    if (log_y >= std::log(kPhiPivot1Value)) {
        const double disc = kQuadB * kQuadB + 4.0 * kQuadA * log_y;
        return (kQuadB - std::sqrt(std::max(disc, 0.0))) / (2.0 * kQuadA);
    }
    if (log_y >= std::log(kPhiPivot2Value))
        return std::pow((kPowOffset - log_y) / kPowScale, 1.0 / kPowExp);
    double lo = kPhiPivot2;
    double hi = std::max(2.0 * kPhiPivot2, -8.0 * log_y);
    while (phi_log(hi) > log_y)
        hi *= 2.0;
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (phi_log(mid) > log_y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// 1 - (1 - a)(1 - b) without cancellation for small a, b.
double combine_unreliability(double a, double b) {
    return a + b - a * b;
}

// degraded GA update phi_inv(1 - (1 - phi(mu))^2), evaluated in the log
// domain once phi(mu) is small enough for 2t - t^2 ~ 2t
double degraded_mean(double mu) {
    const double t = phi(mu);
    if (t > 1e-8)
        return phi_inv(t * (2.0 - t));
    return phi_log_inv(std::log(2.0) + phi_log(mu));
}

} // namespace

double phi(double x) {
    if (x < 0.0 || std::isnan(x))
        throw std::invalid_argument("phi: argument must be nonnegative");
    if (x == 0.0)
        return 1.0;
    return std::exp(phi_log(x));
}

double phi_inv(double y) {
    if (!(y > 0.0) || y > 1.0)
        throw std::invalid_argument("phi_inv: argument must lie in (0, 1]");
    if (y == 1.0)
        return 0.0;
    return phi_log_inv(std::log(y));
}

std::vector<double> ws_block_erasures(std::uint32_t s, double delta) {
    if (s == 0)
        throw std::invalid_argument("ws_block_erasures: S must be positive");
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("ws_block_erasures: delta must lie in [0, 1]");
    std::vector<double> out(s);
    for (std::uint32_t b = 0; b + 1 < s; ++b)
        out[b] = combine_unreliability(delta, std::pow(delta, double(b) + 1.0));
    out[s - 1] = std::pow(delta, double(s));
    return out;
}

std::vector<double> ws_block_bhattacharyya(std::uint32_t s, double z) {
    return ws_block_erasures(s, z);
}

std::vector<double> ws_block_means(std::uint32_t s, double mu) {
    if (s == 0)
        throw std::invalid_argument("ws_block_means: S must be positive");
    if (mu < 0.0)
        throw std::invalid_argument("ws_block_means: mean must be nonnegative");
    std::vector<double> out(s);
    const double a = phi(mu);
    for (std::uint32_t b = 0; b + 1 < s; ++b) {
        if (a > 1e-8) {
            out[b] = phi_inv(combine_unreliability(a, phi((double(b) + 1.0) * mu)));
            continue;
        }
        // log domain: 1 - (1-a)(1-c) ~ a (1 + c/a), with c/a computed stably
        const double ratio = std::exp(phi_log((double(b) + 1.0) * mu) - phi_log(mu));
        out[b] = phi_log_inv(phi_log(mu) + std::log1p(ratio));
    }
    out[s - 1] = double(s) * mu;
    return out;
}

std::vector<double> polar_stage_erasure(const std::vector<double>& profile) {
    std::vector<double> out(profile.size() * 2);
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double z = profile[i];
        if (z < 0.0 || z > 1.0)
            throw std::invalid_argument("polar_stage_erasure: values must lie in [0, 1]");
        out[2 * i] = z * (2.0 - z);
        out[2 * i + 1] = z * z;
    }
    return out;
}

std::vector<double> polar_stage_means(const std::vector<double>& profile) {
    std::vector<double> out(profile.size() * 2);
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double mu = profile[i];
        if (mu < 0.0)
            throw std::invalid_argument("polar_stage_means: means must be nonnegative");
        out[2 * i] = degraded_mean(mu);
        out[2 * i + 1] = 2.0 * mu;
    }
    return out;
}

double channel_llr_mean(double rate, double ebn0_db) {
    if (rate < 0.0 || rate > 1.0)
        throw std::invalid_argument("channel_llr_mean: rate must lie in [0, 1]");
    return 4.0 * rate * std::pow(10.0, ebn0_db / 10.0);
}

Design select_frozen(ReliabilityProfile profile, std::uint32_t k) {
    const std::uint32_t n = static_cast<std::uint32_t>(profile.values.size());
    if (k > n)
        throw std::invalid_argument("select_frozen: K must not exceed N");

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& v = profile.values;
    if (profile.kind == ReliabilityKind::erasure) {
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return v[a] != v[b] ? v[a] < v[b] : a < b;
        });
    } else {
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return v[a] != v[b] ? v[a] > v[b] : a < b;
        });
    }

    std::vector<std::uint32_t> info(order.begin(), order.begin() + k);
    std::vector<std::uint32_t> frozen(order.begin() + k, order.end());
    return Design{std::move(profile), IndexSet(std::move(frozen)), IndexSet(std::move(info))};
}

namespace {

std::vector<double> expand_stages(std::vector<double> values, std::uint32_t stages, ReliabilityKind kind) {
    for (std::uint32_t t = 0; t < stages; ++t)
        values = (kind == ReliabilityKind::erasure) ? polar_stage_erasure(values)
                                                    : polar_stage_means(values);
    return values;
}

// Window-level starting values and profile kind for a design channel.
std::pair<std::vector<double>, ReliabilityKind>
window_seeds(std::uint32_t s, const DesignChannel& design, double rate) {
    if (design.kind == DesignChannel::Kind::bec)
        return {ws_block_erasures(s, design.erasure_prob), ReliabilityKind::erasure};
    const double mu = channel_llr_mean(rate, design.ebn0_db);
    return {ws_block_means(s, mu), ReliabilityKind::ga_mean};
}

} // namespace

Design design_sw(const CodeConfig& config) {
    config.validate();
    const std::uint32_t s = config.window_count();
    const std::uint32_t m = config.window_stages();

    auto [seeds, kind] = window_seeds(s, config.design, config.rate());
    ReliabilityProfile profile{kind, {}};
    profile.values.reserve(config.block_length);
    for (double seed : seeds) {
        auto expanded = expand_stages({seed}, m, kind);
        profile.values.insert(profile.values.end(), expanded.begin(), expanded.end());
    }
    return select_frozen(std::move(profile), config.info_length);
}

Design design_full(std::uint32_t n, std::uint32_t k, const DesignChannel& design, double rate_override) {
    if (!is_power_of_two(n))
        throw std::invalid_argument("design_full: N must be a power of two");
    if (k > n)
        throw std::invalid_argument("design_full: K must not exceed N");
    design.validate();

    const double rate = rate_override >= 0.0 ? rate_override : static_cast<double>(k) / n;
    ReliabilityProfile profile;
    if (design.kind == DesignChannel::Kind::bec) {
        profile.kind = ReliabilityKind::erasure;
        profile.values = expand_stages({design.erasure_prob}, log2_exact(n), profile.kind);
    } else {
        profile.kind = ReliabilityKind::ga_mean;
        profile.values = expand_stages({channel_llr_mean(rate, design.ebn0_db)}, log2_exact(n), profile.kind);
    }
    return select_frozen(std::move(profile), k);
}

std::vector<Design> design_ind(std::uint32_t n, std::uint32_t m, std::uint32_t k,
                               const DesignChannel& design) {
    if (!is_power_of_two(n) || !is_power_of_two(m) || m > n)
        throw std::invalid_argument("design_ind: invalid dimensions");
    if (k > n)
        throw std::invalid_argument("design_ind: K must not exceed N");

    const std::uint32_t s = n / m;
    const std::uint32_t base = k / s;
    const std::uint32_t extras = k % s;
    const double rate = static_cast<double>(k) / n;

    std::vector<Design> designs;
    designs.reserve(s);
    for (std::uint32_t b = 0; b < s; ++b) {
        const std::uint32_t kb = base + (b < extras ? 1 : 0);
        designs.push_back(design_full(m, kb, design, rate));
    }
    return designs;
}

} // namespace swp
