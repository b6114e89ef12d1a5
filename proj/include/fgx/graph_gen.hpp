#pragma once

#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgx/graph.hpp"

namespace fgx {

enum class GraphFamily {
    bandit,
    apple_tasting,
    revealing_action,
    full_feedback,
    loopy_star,
    loopy_star_alt,
    ring,
    loopless_clique,
};

inline const char* to_string(GraphFamily f) {
    switch (f) {
        case GraphFamily::bandit: return "bandit";
        case GraphFamily::apple_tasting: return "apple_tasting";
        case GraphFamily::revealing_action: return "revealing_action";
        case GraphFamily::full_feedback: return "full_feedback";
        case GraphFamily::loopy_star: return "loopy_star";
        case GraphFamily::loopy_star_alt: return "loopy_star_alt";
        case GraphFamily::ring: return "ring";
        case GraphFamily::loopless_clique: return "loopless_clique";
    }
    return "?";
}

inline std::optional<GraphFamily> graph_family_from_string(const std::string& s) {
    for (GraphFamily f : {GraphFamily::bandit, GraphFamily::apple_tasting,
                          GraphFamily::revealing_action, GraphFamily::full_feedback,
                          GraphFamily::loopy_star, GraphFamily::loopy_star_alt,
                          GraphFamily::ring, GraphFamily::loopless_clique})
        if (s == to_string(f)) return f;
    return std::nullopt;
}

struct FamilyParams {
    std::optional<double> p, q, r;
};

namespace detail {

inline double require_param(const std::optional<double>& v, const char* name) {
    if (!v) throw std::invalid_argument(std::string("generate_graph: missing parameter ") + name);
    if (!(*v >= 0.0 && *v <= 1.0))
        throw std::invalid_argument(std::string("generate_graph: parameter ") + name +
                                    " must lie in [0, 1]");
    return *v;
}

}  // namespace detail

// Canonical instance families. Vertex 0 is the loopy-star hub; vertex k-1 is
// its p-target. Ring neighbors: right = (u+1) mod k with weight p, left =
// (u-1) mod k with weight 1-p.
inline FeedbackGraph generate_graph(GraphFamily family, int k, const FamilyParams& params = {}) {
    if (k < 1) throw std::invalid_argument("generate_graph: k must be >= 1");
    std::vector<double> w(static_cast<std::size_t>(k) * k, 0.0);
    auto at = [&](int u, int v) -> double& { return w[static_cast<std::size_t>(u) * k + v]; };

    switch (family) {
        case GraphFamily::bandit:
            for (int u = 0; u < k; ++u) at(u, u) = 1.0;
            break;
        case GraphFamily::apple_tasting:
            // disjoint observer pairs: even vertices carry a self-loop and
            // reveal the next vertex, odd vertices reveal nothing
            for (int u = 0; u < k; u += 2) {
                at(u, u) = 1.0;
                if (u + 1 < k) at(u, u + 1) = 1.0;
            }
            break;
        case GraphFamily::revealing_action:
            for (int v = 0; v < k; ++v) at(0, v) = 1.0;
            break;
        case GraphFamily::full_feedback:
            for (double& x : w) x = 1.0;
            break;
        case GraphFamily::loopy_star: {
            const double p = detail::require_param(params.p, "p");
            const double q = detail::require_param(params.q, "q");
            const double r = detail::require_param(params.r, "r");
            at(0, 0) = q;
            at(0, k - 1) = p;
            for (int v = 1; v + 1 < k; ++v) at(0, v) = r;
            at(k - 1, k - 1) = 1.0 - p;
            for (int v = 1; v + 1 < k; ++v) at(v, v) = std::max(0.0, 1.0 - 2.0 * p);
            break;
        }
        case GraphFamily::loopy_star_alt: {
            if (k < 2) throw std::invalid_argument("generate_graph: loopy_star_alt needs k >= 2");
            FamilyParams alt;
            alt.p = 0.0;
            alt.q = 0.25;
            alt.r = (1.0 - 2.0 * 0.25) / (4.0 * (k - 1));
            return generate_graph(GraphFamily::loopy_star, k, alt);
        }
        case GraphFamily::ring: {
            if (k < 3) throw std::invalid_argument("generate_graph: ring needs k >= 3");
            const double p = detail::require_param(params.p, "p");
            for (int u = 0; u < k; ++u) {
                at(u, (u + 1) % k) = p;
                at(u, (u + k - 1) % k) = 1.0 - p;
            }
            break;
        }
        case GraphFamily::loopless_clique: {
            if (k < 2) throw std::invalid_argument("generate_graph: loopless_clique needs k >= 2");
            const double p = detail::require_param(params.p, "p");
            for (int u = 0; u < k; ++u)
                for (int v = 0; v < k; ++v) {
                    if (u == v) continue;
                    const bool odd = (v + 1) % 2 == 1;  // 1-based vertex id parity
                    at(u, v) = odd ? p / (u + 1) : 1.0 - p / (u + 1);
                }
            break;
        }
    }
    return FeedbackGraph(k, std::move(w));
}

// Default optimal vertex used by the best-one mean assignment: the hub for
// the alternative loopy star, the last vertex otherwise.
inline int default_best_vertex(GraphFamily family, int k) {
    return family == GraphFamily::loopy_star_alt ? 0 : k - 1;
}

// Plain-text matrix format: first line "K", then K rows of K space-separated
// weights (row-major).
inline std::string graph_to_text(const FeedbackGraph& g) {
    const int k = g.size();
    std::string out = std::to_string(k) + "\n";
    char buf[40];
    for (int u = 0; u < k; ++u) {
        for (int v = 0; v < k; ++v) {
            std::snprintf(buf, sizeof buf, "%.17g", g.weight(u, v));
            out += buf;
            out += (v + 1 == k) ? '\n' : ' ';
        }
    }
    return out;
}

inline FeedbackGraph graph_from_text(std::istream& in) {
    int k = 0;
    if (!(in >> k) || k < 1) throw std::invalid_argument("graph_from_text: bad vertex count");
    std::vector<double> w(static_cast<std::size_t>(k) * k);
    for (double& x : w)
        if (!(in >> x)) throw std::invalid_argument("graph_from_text: truncated weight matrix");
    return FeedbackGraph(k, std::move(w));
}

inline FeedbackGraph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    return graph_from_text(in);
}

}  // namespace fgx
