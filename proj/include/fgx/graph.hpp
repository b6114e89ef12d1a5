#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgx {

// Directed feedback graph over vertices {0, ..., k-1}. weight(u, v) is the
// probability that edge (u, v) fires when u is selected; the edge set is
// always derived from the weights, never stored separately.
class FeedbackGraph {
public:
    FeedbackGraph(int k, std::vector<double> weights) : k_(k), w_(std::move(weights)) {
        if (k_ < 1) throw std::invalid_argument("FeedbackGraph: k must be >= 1");
        if (w_.size() != static_cast<std::size_t>(k_) * k_)
            throw std::invalid_argument("FeedbackGraph: weight matrix must be k x k");
        for (double x : w_)
            if (!(x >= 0.0 && x <= 1.0))
                throw std::invalid_argument("FeedbackGraph: weights must lie in [0, 1]");
    }

    int size() const { return k_; }
    double weight(int u, int v) const { return w_[idx(u, v)]; }
    bool edge(int u, int v) const { return w_[idx(u, v)] > 0.0; }
    bool self_loop(int v) const { return edge(v, v); }
    const std::vector<double>& weights() const { return w_; }

    std::vector<int> in_neighbors(int v) const {
        std::vector<int> r;
        for (int u = 0; u < k_; ++u)
            if (edge(u, v)) r.push_back(u);
        return r;
    }

    std::vector<int> out_neighbors(int u) const {
        std::vector<int> r;
        for (int v = 0; v < k_; ++v)
            if (edge(u, v)) r.push_back(v);
        return r;
    }

    bool has_in_edge(int v) const {
        for (int u = 0; u < k_; ++u)
            if (edge(u, v)) return true;
        return false;
    }

private:
    std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * k_ + v; }

    int k_;
    std::vector<double> w_;
};

enum class VertexClass { strongly_observable, weakly_observable, non_observable };

inline const char* to_string(VertexClass c) {
    switch (c) {
        case VertexClass::strongly_observable: return "strongly-observable";
        case VertexClass::weakly_observable: return "weakly-observable";
        default: return "non-observable";
    }
}

struct ObservabilityReport {
    std::vector<VertexClass> vertex_class;
    std::vector<int> strongly;    // SO(G)
    std::vector<int> weakly;      // W(G)
    std::vector<int> self_loops;  // L(G)
    VertexClass graph_class;

    bool observable() const { return graph_class != VertexClass::non_observable; }
};

// A vertex with no in-edges is non-observable; otherwise it is strongly
// observable when it has a self-loop or in-edges from every other vertex,
// and weakly observable if neither holds.
inline ObservabilityReport classify_observability(const FeedbackGraph& g) {
    const int k = g.size();
    ObservabilityReport rep;
    rep.vertex_class.resize(k);
    for (int v = 0; v < k; ++v) {
        int in_degree = 0;
        bool all_others = true;
        for (int u = 0; u < k; ++u) {
            if (g.edge(u, v)) ++in_degree;
            else if (u != v) all_others = false;
        }
        if (g.self_loop(v)) rep.self_loops.push_back(v);
        VertexClass c;
        if (in_degree == 0) c = VertexClass::non_observable;
        else if (g.self_loop(v) || all_others) c = VertexClass::strongly_observable;
        else c = VertexClass::weakly_observable;
        rep.vertex_class[v] = c;
        if (c == VertexClass::strongly_observable) rep.strongly.push_back(v);
        else if (c == VertexClass::weakly_observable) rep.weakly.push_back(v);
    }
    if (static_cast<int>(rep.strongly.size()) == k)
        rep.graph_class = VertexClass::strongly_observable;
    else if (rep.strongly.size() + rep.weakly.size() == static_cast<std::size_t>(k))
        rep.graph_class = VertexClass::weakly_observable;
    else
        rep.graph_class = VertexClass::non_observable;
    return rep;
}

namespace detail {

// Subset algorithms below run on 32-bit vertex masks; callers cap k at 24.
inline constexpr int max_exact_vertices = 24;

inline void require_exact_size(const FeedbackGraph& g, const char* what) {
    if (g.size() > max_exact_vertices)
        throw std::invalid_argument(std::string(what) + ": exact enumeration is capped at k <= 24");
}

// Symmetric adjacency: u and v conflict if either directed edge is present.
inline std::vector<std::uint32_t> symmetric_adjacency(const FeedbackGraph& g) {
    const int k = g.size();
    std::vector<std::uint32_t> adj(k, 0);
    for (int u = 0; u < k; ++u)
        for (int v = 0; v < k; ++v)
            if (u != v && (g.edge(u, v) || g.edge(v, u))) {
                adj[u] |= 1u << v;
                adj[v] |= 1u << u;
            }
    return adj;
}

struct MisSearch {
    std::span<const std::uint32_t> adj_closed;  // adj[v] | {v}
    int best = 0;

    void run(std::uint32_t allowed, int count) {
        if (count + std::popcount(allowed) <= best) return;
        if (allowed == 0) {
            best = std::max(best, count);
            return;
        }
        const int v = std::countr_zero(allowed);
        run(allowed & ~adj_closed[v], count + 1);
        run(allowed & ~(1u << v), count);
    }
};

inline int max_independent_size(std::span<const std::uint32_t> adj_closed, std::uint32_t allowed) {
    MisSearch s{adj_closed};
    s.run(allowed, 0);
    return s.best;
}

// Exact minimum set cover with branch and bound: branch on the coverers of
// the lowest uncovered element. Returns k+1 when infeasible.
struct CoverSearch {
    std::span<const std::uint32_t> covers;
    std::uint32_t allowed;
    int k;
    int max_cover = 1;
    int best;

    void run(std::uint32_t uncovered, int count) {
        if (uncovered == 0) {
            best = std::min(best, count);
            return;
        }
        const int need = (std::popcount(uncovered) + max_cover - 1) / max_cover;
        if (count + need >= best) return;
        const int e = std::countr_zero(uncovered);
        for (int v = 0; v < k; ++v) {
            if (!(allowed >> v & 1u)) continue;
            if (!(covers[v] >> e & 1u)) continue;
            run(uncovered & ~covers[v], count + 1);
        }
    }
};

inline int min_cover_size(int k, std::span<const std::uint32_t> covers, std::uint32_t universe,
                          std::uint32_t allowed) {
    if (universe == 0) return 0;
    for (int e = 0; e < k; ++e) {
        if (!(universe >> e & 1u)) continue;
        bool coverable = false;
        for (int v = 0; v < k && !coverable; ++v)
            coverable = (allowed >> v & 1u) && (covers[v] >> e & 1u);
        if (!coverable) return k + 1;
    }
    CoverSearch s{covers, allowed, k};
    for (int v = 0; v < k; ++v)
        if (allowed >> v & 1u) s.max_cover = std::max(s.max_cover, std::popcount(covers[v]));
    s.best = k + 1;

    // greedy upper bound, also a feasible witness bound for pruning
    {
        std::uint32_t uncovered = universe;
        int picked = 0;
        while (uncovered != 0) {
            int best_v = -1, best_gain = 0;
            for (int v = 0; v < k; ++v) {
                if (!(allowed >> v & 1u)) continue;
                const int gain = std::popcount(covers[v] & uncovered);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_v = v;
                }
            }
            uncovered &= ~covers[best_v];
            ++picked;
        }
        s.best = picked;
    }
    s.run(universe, 0);
    return s.best;
}

inline std::uint32_t mask_above(int v) {
    return v + 1 >= 32 ? 0u : ~((2u << v) - 1u);
}

inline std::vector<int> mask_to_vertices(std::uint32_t m) {
    std::vector<int> out;
    while (m != 0) {
        const int v = std::countr_zero(m);
        out.push_back(v);
        m &= m - 1;
    }
    return out;
}

}  // namespace detail

// Minimum-cardinality D with target ⊆ ∪_{d ∈ D} N_out(d). Ties are broken
// toward the lexicographically smallest vertex set. Throws when some target
// vertex has no in-edge at all.
inline std::vector<int> min_dominating_set_of(const FeedbackGraph& g, std::span<const int> target) {
    detail::require_exact_size(g, "min_dominating_set_of");
    const int k = g.size();
    std::uint32_t universe = 0;
    for (int v : target) {
        if (v < 0 || v >= k) throw std::invalid_argument("min_dominating_set_of: vertex out of range");
        universe |= 1u << v;
    }
    if (universe == 0) return {};

    std::vector<std::uint32_t> covers(k, 0);
    for (int d = 0; d < k; ++d)
        for (int v = 0; v < k; ++v)
            if (g.edge(d, v)) covers[d] |= 1u << v;
    for (std::uint32_t& c : covers) c &= universe;

    const std::uint32_t all = k >= 32 ? ~0u : (1u << k) - 1u;
    const int size = detail::min_cover_size(k, covers, universe, all);
    if (size > k)
        throw std::domain_error("min_dominating_set_of: some target vertex has an empty in-neighborhood");

    // lexicographically smallest witness: keep a vertex iff the optimum is
    // still reachable using it plus strictly larger vertices
    std::uint32_t chosen = 0, uncovered = universe;
    int taken = 0;
    for (int v = 0; v < k && uncovered != 0; ++v) {
        const std::uint32_t rest = detail::mask_above(v) & all;
        const std::uint32_t after = uncovered & ~covers[v];
        const int tail = after == 0 ? 0 : detail::min_cover_size(k, covers, after, rest);
        if (tail <= k && taken + 1 + tail == size) {
            chosen |= 1u << v;
            uncovered = after;
            ++taken;
        }
    }
    return detail::mask_to_vertices(chosen);
}

struct GraphQuantities {
    int alpha = 0;  // independence number
    int delta = 0;  // weak domination number; 0 when W(G) is empty
    int sigma = 0;  // number of self-loops
    std::vector<int> independent_set;  // witness of size alpha
    std::vector<int> dominating_set;   // witness of size delta
};

// Exact alpha(G), delta(G), sigma(G) by subset branch and bound (k <= 24).
inline GraphQuantities graph_quantities(const FeedbackGraph& g) {
    detail::require_exact_size(g, "graph_quantities");
    const int k = g.size();
    const std::uint32_t all = (k >= 32 ? ~0u : (1u << k) - 1u);
    GraphQuantities q;

    for (int v = 0; v < k; ++v)
        if (g.self_loop(v)) ++q.sigma;

    const std::vector<std::uint32_t> adj = detail::symmetric_adjacency(g);
    std::vector<std::uint32_t> adj_closed(k);
    for (int v = 0; v < k; ++v) adj_closed[v] = adj[v] | (1u << v);
    q.alpha = detail::max_independent_size(adj_closed, all);

    // lexicographically smallest maximum independent set
    {
        std::uint32_t chosen = 0, avail = all;
        int taken = 0;
        for (int v = 0; v < k && taken < q.alpha; ++v) {
            if (!(avail >> v & 1u)) continue;
            const std::uint32_t rest = avail & ~adj_closed[v] & detail::mask_above(v);
            if (taken + 1 + detail::max_independent_size(adj_closed, rest) == q.alpha) {
                chosen |= 1u << v;
                avail &= ~adj_closed[v];
                ++taken;
            } else {
                avail &= ~(1u << v);
            }
        }
        q.independent_set = detail::mask_to_vertices(chosen);
    }

    const ObservabilityReport rep = classify_observability(g);
    q.dominating_set = min_dominating_set_of(g, rep.weakly);
    q.delta = static_cast<int>(q.dominating_set.size());
    return q;
}

// Upper bound on the size of a minimum set dominating SO(G): min(|SO|, 2)
// when no strongly observable vertex has a self-loop, and otherwise
// sigma - floor(sigma / (alpha + 1)) vertices with self-loops suffice.
inline int so_domination_bound(const FeedbackGraph& g) {
    const ObservabilityReport rep = classify_observability(g);
    if (rep.strongly.empty())
        throw std::domain_error("so_domination_bound: SO(G) is empty");
    const GraphQuantities q = graph_quantities(g);
    if (q.sigma == 0) return std::min<int>(static_cast<int>(rep.strongly.size()), 2);
    return q.sigma - q.sigma / (q.alpha + 1);
}

}  // namespace fgx
