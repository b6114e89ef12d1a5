#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fgx/divergence.hpp"
#include "fgx/estimator.hpp"

namespace fgx {

enum class ThresholdKind { theoretical, practical };

inline const char* to_string(ThresholdKind k) {
    return k == ThresholdKind::theoretical ? "theoretical" : "practical";
}

struct StoppingConfig {
    ThresholdKind kind = ThresholdKind::practical;
    double delta = 0.1;
};

namespace detail {

// h(u) = u - ln u on [1, inf), increasing with h(1) = 1.
inline double stopping_h(double u) { return u - std::log(u); }

// Inverse of h on [1, inf): bisection bracket refined by Newton steps.
inline double stopping_h_inv(double y) {
    if (!(y >= 1.0)) throw std::domain_error("stopping_h_inv: argument must be >= 1");
    if (y == 1.0) return 1.0;
    double lo = 1.0, hi = y + 2.0 * std::log1p(y);
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fu = stopping_h(u) - y;
        if (fu > 0.0) hi = u;
        else lo = u;
        const double du = fu / (1.0 - 1.0 / u);  // h'(u) = 1 - 1/u
        double next = u - du;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - u) < 1e-15 * u) return next;
        u = next;
    }
    return u;
}

// Piecewise envelope used by the mixture-martingale tail constant; z in
// [1, e].
inline double h_tilde(double z, double x) {
    const double knee = stopping_h(1.0 / std::log(z));
    if (x >= knee) {
        const double u = stopping_h_inv(x);
        return u * std::exp(1.0 / u);
    }
    return z * (x - std::log(std::log(z)));
}

}  // namespace detail

// Tail constant C_exp(x) = 2 h~_{3/2}((h^{-1}(1+x) + ln(2 zeta(2))) / 2).
inline double c_exp(double x) {
    if (!(x >= 0.0)) throw std::domain_error("c_exp: argument must be nonnegative");
    constexpr double zeta2 = 1.6449340668482264;  // pi^2 / 6
    const double inner = 0.5 * (detail::stopping_h_inv(1.0 + x) + std::log(2.0 * zeta2));
    return 2.0 * detail::h_tilde(1.5, inner);
}

// Stopping threshold beta(t, delta):
//   theoretical: 2 C_exp(ln((k-1)/delta) / 2) + 6 ln(1 + ln t)
//   practical:   ln(1/delta) + 3 ln(1 + 2 ln t)
inline double threshold(const StoppingConfig& cfg, long t, int k) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw std::invalid_argument("threshold: delta must lie in (0, 1)");
    if (t < 1) throw std::invalid_argument("threshold: t must be >= 1");
    const double lt = std::log(static_cast<double>(t));
    if (cfg.kind == ThresholdKind::theoretical)
        return 2.0 * c_exp(0.5 * std::log((k - 1) / cfg.delta)) + 6.0 * std::log1p(lt);
    return std::log(1.0 / cfg.delta) + 3.0 * std::log1p(2.0 * lt);
}

// The time-independent part, cached by run loops that evaluate the threshold
// every round.
inline double threshold_constant(const StoppingConfig& cfg, int k) {
    if (cfg.kind == ThresholdKind::theoretical)
        return 2.0 * c_exp(0.5 * std::log((k - 1) / cfg.delta));
    return std::log(1.0 / cfg.delta);
}

inline double threshold_from_constant(const StoppingConfig& cfg, double constant, long t) {
    const double lt = std::log(static_cast<double>(t));
    if (cfg.kind == ThresholdKind::theoretical) return constant + 6.0 * std::log1p(lt);
    return constant + 3.0 * std::log1p(2.0 * lt);
}

// GLRT statistic: the smallest weighted two-sample divergence between the
// empirical best vertex and any alternative, weights given by observation
// counts. Zero (stopping impossible) until every vertex has been observed.
inline double glrt_statistic(const EstimatorState& est, const RewardFamily& family) {
    if (!est.fully_observed()) return 0.0;
    const int k = est.size();
    const int a = est.best_estimate();
    double lambda = std::numeric_limits<double>::infinity();
    for (int u = 0; u < k; ++u) {
        if (u == a) continue;
        lambda = std::min(lambda,
                          pairwise_rate(family, est.mean_estimate(a), est.mean_estimate(u),
                                        static_cast<double>(est.observations(a)),
                                        static_cast<double>(est.observations(u))));
    }
    return k >= 2 ? lambda : 0.0;
}

}  // namespace fgx
