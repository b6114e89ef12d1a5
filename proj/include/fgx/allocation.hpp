#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fgx/divergence.hpp"
#include "fgx/graph.hpp"

namespace fgx {

// A probability vector over vertices.
class Allocation {
public:
    explicit Allocation(std::vector<double> omega) : w_(std::move(omega)) {
        double sum = 0.0;
        for (double x : w_) {
            if (!(x >= 0.0)) throw std::invalid_argument("Allocation: entries must be nonnegative");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("Allocation: entries must sum to 1");
    }

    static Allocation uniform(int k) {
        return Allocation(std::vector<double>(k, 1.0 / k));
    }

    int size() const { return static_cast<int>(w_.size()); }
    double operator[](int u) const { return w_[u]; }
    const std::vector<double>& values() const { return w_; }

private:
    std::vector<double> w_;
};

// Observation rate m = G^T omega.
inline std::vector<double> observation_rate(const FeedbackGraph& g, std::span<const double> omega) {
    const int k = g.size();
    std::vector<double> m(k, 0.0);
    for (int v = 0; v < k; ++v) {
        const double wv = omega[v];
        if (wv == 0.0) continue;
        for (int u = 0; u < k; ++u) m[u] += wv * g.weight(v, u);
    }
    return m;
}

inline std::vector<double> observation_rate(const FeedbackGraph& g, const Allocation& omega) {
    return observation_rate(g, std::span<const double>(omega.values()));
}

namespace detail {

// Objective term for alternative u: (m_u + m_best) I_alpha evaluated in its
// weighted two-KL form. Zero whenever either rate vanishes.
inline double alternative_rate(const RewardFamily& f, std::span<const double> means, int best,
                               int u, std::span<const double> m) {
    return pairwise_rate(f, means[best], means[u], m[best], m[u]);
}

inline double inverse_time_impl(const FeedbackGraph& g, const RewardFamily& f,
                                std::span<const double> means, int best,
                                std::span<const double> omega) {
    const std::vector<double> m = observation_rate(g, omega);
    double worst = std::numeric_limits<double>::infinity();
    for (int u = 0; u < g.size(); ++u) {
        if (u == best) continue;
        worst = std::min(worst, alternative_rate(f, means, best, u, m));
    }
    return worst;
}

}  // namespace detail

// Information rate 1/T(omega; nu): the smallest per-round evidence against
// any alternative under selection frequencies omega.
inline double inverse_time(const Instance& inst, const Allocation& omega) {
    if (inst.size() < 2) throw std::invalid_argument("inverse_time: need at least two vertices");
    if (omega.size() != inst.size()) throw std::invalid_argument("inverse_time: size mismatch");
    if (!classify_observability(inst.graph()).observable())
        throw std::domain_error("inverse_time: instance is not observable");
    return detail::inverse_time_impl(inst.graph(), inst.family(), inst.means(),
                                     inst.best_vertex(), omega.values());
}

namespace detail {

// G Delta^{-2} with the best vertex carrying the minimum gap.
inline std::vector<double> graph_gap_score(const FeedbackGraph& g, std::span<const double> means,
                                           int best) {
    const int k = g.size();
    double min_gap = std::numeric_limits<double>::infinity();
    for (int u = 0; u < k; ++u)
        if (u != best) min_gap = std::min(min_gap, means[best] - means[u]);
    std::vector<double> inv_sq(k);
    for (int u = 0; u < k; ++u) {
        const double gap = u == best ? min_gap : means[best] - means[u];
        inv_sq[u] = 1.0 / (gap * gap);
    }
    std::vector<double> score(k, 0.0);
    for (int u = 0; u < k; ++u)
        for (int v = 0; v < k; ++v) score[u] += g.weight(u, v) * inv_sq[v];
    return score;
}

inline std::optional<std::vector<double>> heuristic_allocation_impl(const FeedbackGraph& g,
                                                                    std::span<const double> means,
                                                                    int best) {
    double min_gap = std::numeric_limits<double>::infinity();
    for (int u = 0; u < g.size(); ++u)
        if (u != best) min_gap = std::min(min_gap, means[best] - means[u]);
    if (!(min_gap > 0.0)) return std::nullopt;
    std::vector<double> score = graph_gap_score(g, means, best);
    const double total = std::accumulate(score.begin(), score.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) return std::nullopt;
    for (double& x : score) x /= total;
    return score;
}

}  // namespace detail

// omega_heur = G Delta^{-2} / ||G Delta^{-2}||_1.
inline Allocation heuristic_allocation(const Instance& inst) {
    auto w = detail::heuristic_allocation_impl(inst.graph(), inst.means(), inst.best_vertex());
    if (!w) throw std::domain_error("heuristic_allocation: degenerate gaps");
    return Allocation(std::move(*w));
}

// Uniform allocation on the smallest prefix (by G Delta^{-2} score, ties by
// index) of size >= top_k that dominates every vertex. Empty when no prefix
// dominates.
inline std::optional<Allocation> sparse_allocation(const Instance& inst, int top_k) {
    if (top_k < 1) throw std::invalid_argument("sparse_allocation: top_k must be >= 1");
    const FeedbackGraph& g = inst.graph();
    const int k = g.size();
    std::vector<double> score = detail::graph_gap_score(g, inst.means(), inst.best_vertex());
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return score[a] > score[b]; });

    std::vector<char> dominated(k, 0);
    int covered = 0;
    for (int n = 0; n < k; ++n) {
        const int d = order[n];
        for (int v = 0; v < k; ++v)
            if (!dominated[v] && g.edge(d, v)) {
                dominated[v] = 1;
                ++covered;
            }
        if (n + 1 >= top_k && covered == k) {
            std::vector<double> w(k, 0.0);
            for (int i = 0; i <= n; ++i) w[order[i]] = 1.0 / (n + 1);
            return Allocation(std::move(w));
        }
    }
    return std::nullopt;
}

}  // namespace fgx
