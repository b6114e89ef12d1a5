#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fgx/allocation.hpp"
#include "fgx/divergence.hpp"
#include "fgx/graph.hpp"
#include "fgx/linalg.hpp"

namespace fgx {

namespace detail {

inline void require_gaussian(const Instance& inst, const char* what) {
    if (inst.family().kind != RewardKind::gaussian)
        throw std::invalid_argument(std::string(what) + ": Gaussian rewards required");
}

}  // namespace detail

// Structural upper bound on T*. When delta(G) + sigma(G) > 0 the graph can be
// dominated by kappa = delta + sigma - floor(sigma / (alpha + 1)) vertices;
// spreading mass uniformly over them bounds every observation rate through
//   Gbar_u = max( max_{v in D(G)} G_{v,u},  min_{v in L(G): G_{v,u} > 0} G_{v,u} ),
// where the self-loop branch applies to strongly observable vertices (the set
// a dominating subset of L(G) is guaranteed to reach). Otherwise the graph is
// a loopless clique and two vertices suffice.
inline double scaling_bound(const Instance& inst) {
    detail::require_gaussian(inst, "scaling_bound");
    const FeedbackGraph& g = inst.graph();
    const int k = g.size();
    const int best = inst.best_vertex();
    const double lambda2 = inst.family().variance;
    const GraphQuantities q = graph_quantities(g);
    const ObservabilityReport rep = classify_observability(g);

    if (q.delta + q.sigma > 0) {
        std::vector<char> in_l(k, 0), in_so(k, 0);
        for (int v : rep.self_loops) in_l[v] = 1;
        for (int v : rep.strongly) in_so[v] = 1;

        std::vector<double> gbar(k, 0.0);
        for (int u = 0; u < k; ++u) {
            double value = -1.0;
            for (int d : q.dominating_set) value = std::max(value, g.weight(d, u));
            if (q.sigma > 0 && in_so[u]) {
                double mn = std::numeric_limits<double>::infinity();
                for (int v : rep.self_loops)
                    if (g.edge(v, u)) mn = std::min(mn, g.weight(v, u));
                if (std::isfinite(mn)) value = std::max(value, mn);
            }
            if (!(value > 0.0))
                throw std::domain_error("scaling_bound: vertex has no dominating or self-loop in-edge");
            gbar[u] = value;
        }

        const double kappa = q.delta + q.sigma - q.sigma / (q.alpha + 1);
        double denom = std::numeric_limits<double>::infinity();
        for (int u = 0; u < k; ++u) {
            if (u == best) continue;
            const double gap = inst.gap(u);
            denom = std::min(denom, std::min(gbar[u], gbar[best]) * gap * gap);
        }
        return 4.0 * kappa * lambda2 / denom;
    }

    // loopless clique: Gbar = min over vertex pairs of the worst inverse
    // pooled weight toward any alternative and the best vertex
    double gbar = std::numeric_limits<double>::infinity();
    for (int v = 0; v < k; ++v) {
        for (int w = 0; w < k; ++w) {
            if (v == w) continue;
            double worst = 0.0;
            for (int u = 0; u < k; ++u) {
                if (u == best) continue;
                const double to_u = g.weight(v, u) + g.weight(w, u);
                const double to_best = g.weight(v, best) + g.weight(w, best);
                if (to_u <= 0.0 || to_best <= 0.0) {
                    worst = std::numeric_limits<double>::infinity();
                    break;
                }
                worst = std::max(worst, 1.0 / to_u + 1.0 / to_best);
            }
            gbar = std::min(gbar, worst);
        }
    }
    const double dmin = inst.min_gap();
    return 4.0 * gbar * lambda2 / (dmin * dmin);
}

// T(omega_heur) <= 4 lambda^2 ||G Delta^{-2}||_1 / sigma_min(G)^2; infinite
// for singular G.
inline double heuristic_bound(const Instance& inst) {
    detail::require_gaussian(inst, "heuristic_bound");
    const FeedbackGraph& g = inst.graph();
    const double smin = min_singular_value(g.size(), g.weights());
    if (smin <= 1e-12) return std::numeric_limits<double>::infinity();
    const std::vector<double> score =
        detail::graph_gap_score(g, inst.means(), inst.best_vertex());
    double l1 = 0.0;
    for (double x : score) l1 += x;
    return 4.0 * inst.family().variance * l1 / (smin * smin);
}

// Zero-information alternative for Bernoulli rewards in the uninformed
// setting: moving the target's mean up to the best mean while scaling its
// incoming edge probabilities down leaves every product distribution
// untouched, so the weighted divergence to the alternative is exactly zero.
struct BernoulliConfusion {
    FeedbackGraph graph;
    std::vector<double> means;
    double divergence = 0.0;
};

inline BernoulliConfusion bernoulli_confusion(const Instance& inst, int target,
                                              const Allocation& weights) {
    if (inst.family().kind != RewardKind::bernoulli)
        throw std::invalid_argument("bernoulli_confusion: Bernoulli rewards required");
    const int k = inst.size();
    const int best = inst.best_vertex();
    if (target < 0 || target >= k || target == best)
        throw std::invalid_argument("bernoulli_confusion: target must be a suboptimal vertex");
    if (weights.size() != k) throw std::invalid_argument("bernoulli_confusion: size mismatch");
    const double mu_best = inst.means()[best];
    if (!(mu_best > 0.0)) throw std::domain_error("bernoulli_confusion: best mean must be positive");

    const FeedbackGraph& g = inst.graph();
    std::vector<double> w = g.weights();
    std::vector<double> means = inst.means();
    for (int v = 0; v < k; ++v)
        w[static_cast<std::size_t>(v) * k + target] =
            g.weight(v, target) * inst.means()[target] / mu_best;
    means[target] = mu_best;
    FeedbackGraph alt(k, std::move(w));

    // full observation-based divergence between the product models
    double div = 0.0;
    for (int u = 0; u < k; ++u) {
        for (int v = 0; v < k; ++v) {
            const double q = g.weight(v, u) * inst.means()[u];
            const double qa = alt.weight(v, u) * means[u];
            if (q <= 0.0 && qa <= 0.0) continue;
            div += weights[v] * bern_kl(q, qa);
        }
    }
    return BernoulliConfusion{std::move(alt), std::move(means), div};
}

inline BernoulliConfusion bernoulli_confusion(const Instance& inst, int target) {
    return bernoulli_confusion(inst, target, Allocation::uniform(inst.size()));
}

}  // namespace fgx
