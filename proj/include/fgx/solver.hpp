#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "fgx/allocation.hpp"
#include "fgx/common.hpp"
#include "fgx/divergence.hpp"
#include "fgx/graph.hpp"

namespace fgx {

struct SolverConfig {
    long max_iterations = 50'000;  // per restart
    double step_scale = 1.0;
    long tail_window = 1'000;  // iterates used for the oscillation diagnostic
    FeedbackMode mode = FeedbackMode::uninformed;
};

struct SolverResult {
    double t_star = std::numeric_limits<double>::infinity();
    Allocation omega_star;
    std::vector<double> per_alt_values;  // objective term per alternative, ascending vertex id
    long iterations = 0;
    double gap_estimate = 0.0;
};

namespace detail {

// One entropic mirror-ascent pass maximizing the concave objective
//   F(omega) = min_{u != best} (m_u + m_best) I_alpha,  m = G^T omega,
// using the supergradient of the active minimum. The per-term gradient in m
// follows from the inf-over-mixtures representation: d/dm_u = KL(mu_u, mix),
// d/dm_best = KL(mu_best, mix) at the pooled mean of the active pair.
struct AscentOutcome {
    std::vector<double> omega;
    double value = 0.0;
    double tail_low = 0.0;
    double tail_high = 0.0;
    long iterations = 0;
};

inline AscentOutcome mirror_ascent(const FeedbackGraph& g, const RewardFamily& f,
                                   std::span<const double> means, int best,
                                   std::span<const double> start, long iterations,
                                   double step_scale, long tail_window) {
    const int k = g.size();
    std::vector<double> omega(start.begin(), start.end());
    std::vector<double> best_omega = omega;
    double best_value = -1.0;
    double tail_low = std::numeric_limits<double>::infinity();
    double tail_high = -std::numeric_limits<double>::infinity();
    double step_base = 0.0;
    std::vector<double> grad(k);
    std::vector<double> m(k);

    for (long n = 1; n <= iterations; ++n) {
        std::fill(m.begin(), m.end(), 0.0);
        for (int v = 0; v < k; ++v) {
            const double wv = omega[v];
            if (wv == 0.0) continue;
            for (int u = 0; u < k; ++u) m[u] += wv * g.weight(v, u);
        }

        int active = -1;
        double value = std::numeric_limits<double>::infinity();
        for (int u = 0; u < k; ++u) {
            if (u == best) continue;
            const double fu = alternative_rate(f, means, best, u, m);
            if (fu < value) {
                value = fu;
                active = u;
            }
        }
        if (value > best_value) {
            best_value = value;
            best_omega = omega;
        }
        if (n > iterations - tail_window) {
            tail_low = std::min(tail_low, value);
            tail_high = std::max(tail_high, value);
        }

        // supergradient of the active term w.r.t. omega
        double kl_best, kl_alt;
        const double mb = m[best], ma = m[active];
        if (mb > 0.0 && ma > 0.0) {
            const double mix = (mb * means[best] + ma * means[active]) / (mb + ma);
            kl_best = kl(f, means[best], mix);
            kl_alt = kl(f, means[active], mix);
        } else if (mb > 0.0) {
            kl_best = 0.0;
            kl_alt = kl(f, means[active], means[best]);
        } else if (ma > 0.0) {
            kl_best = kl(f, means[best], means[active]);
            kl_alt = 0.0;
        } else {
            kl_best = kl(f, means[best], 0.5 * (means[best] + means[active]));
            kl_alt = kl(f, means[active], 0.5 * (means[best] + means[active]));
        }
        double grad_max = 0.0;
        for (int v = 0; v < k; ++v) {
            grad[v] = g.weight(v, active) * kl_alt + g.weight(v, best) * kl_best;
            grad_max = std::max(grad_max, std::abs(grad[v]));
        }
        if (n == 1) step_base = step_scale / std::max(grad_max, 1e-12);

        const double eta = step_base / std::sqrt(static_cast<double>(n));
        double shift = -std::numeric_limits<double>::infinity();
        for (int v = 0; v < k; ++v) shift = std::max(shift, eta * grad[v]);
        double total = 0.0;
        for (int v = 0; v < k; ++v) {
            omega[v] = std::max(omega[v] * std::exp(eta * grad[v] - shift),
                                std::numeric_limits<double>::min());
            total += omega[v];
        }
        for (int v = 0; v < k; ++v) omega[v] /= total;
    }

    AscentOutcome out;
    out.omega = std::move(best_omega);
    out.value = best_value;
    out.tail_low = tail_low;
    out.tail_high = tail_high;
    out.iterations = iterations;
    return out;
}

inline void validate_solver_instance(const Instance& inst, FeedbackMode mode) {
    if (inst.size() < 2)
        throw std::invalid_argument("solve_characteristic_time: need at least two vertices");
    if (!classify_observability(inst.graph()).observable())
        throw std::domain_error("solve_characteristic_time: instance is not observable");
    if (inst.family().kind == RewardKind::bernoulli && mode == FeedbackMode::uninformed)
        throw std::domain_error(
            "solve_characteristic_time: uninformed Bernoulli instances have no finite "
            "characteristic time; solve with informed semantics");
}

}  // namespace detail

// Warm-started refinement used inside the learning loop: a short ascent from
// a previous solution, no restarts.
inline Allocation refine_allocation(const FeedbackGraph& g, const RewardFamily& f,
                                    std::span<const double> means, int best,
                                    std::span<const double> start, long iterations) {
    auto out = detail::mirror_ascent(g, f, means, best, start, iterations, 1.0, 0);
    return Allocation(std::move(out.omega));
}

// Maximin allocation over the simplex: characteristic time T* and an optimal
// omega*. Deterministic; restarts from the uniform, heuristic, and
// best-vertex-weighted points, keeping the best iterate across all of them.
inline SolverResult solve_characteristic_time(const Instance& inst, const SolverConfig& cfg = {}) {
    detail::validate_solver_instance(inst, cfg.mode);
    const int k = inst.size();
    const int best = inst.best_vertex();

    std::vector<std::vector<double>> starts;
    starts.push_back(std::vector<double>(k, 1.0 / k));
    if (auto heur = detail::heuristic_allocation_impl(inst.graph(), inst.means(), best))
        starts.push_back(std::move(*heur));
    {
        std::vector<double> mix(k, 0.5 / k);
        mix[best] += 0.5;
        starts.push_back(std::move(mix));
    }

    detail::AscentOutcome winner;
    winner.value = -1.0;
    long total_iterations = 0;
    for (const auto& s : starts) {
        auto out = detail::mirror_ascent(inst.graph(), inst.family(), inst.means(), best, s,
                                         cfg.max_iterations, cfg.step_scale, cfg.tail_window);
        total_iterations += out.iterations;
        if (out.value > winner.value) winner = std::move(out);
    }

    SolverResult res{/*t_star=*/std::numeric_limits<double>::infinity(),
                     /*omega_star=*/Allocation(std::move(winner.omega)),
                     /*per_alt_values=*/{},
                     /*iterations=*/total_iterations,
                     /*gap_estimate=*/0.0};
    const std::vector<double> m = observation_rate(inst.graph(), res.omega_star);
    for (int u = 0; u < k; ++u) {
        if (u == best) continue;
        res.per_alt_values.push_back(
            detail::alternative_rate(inst.family(), inst.means(), best, u, m));
    }
    if (winner.value > 0.0) res.t_star = 1.0 / winner.value;
    if (winner.value > 0.0 && winner.tail_high >= winner.tail_low)
        res.gap_estimate = (winner.tail_high - winner.tail_low) / winner.value;
    return res;
}

}  // namespace fgx
