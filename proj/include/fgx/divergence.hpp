#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fgx/graph.hpp"

namespace fgx {

enum class RewardKind { gaussian, bernoulli };

inline const char* to_string(RewardKind k) {
    return k == RewardKind::gaussian ? "gaussian" : "bernoulli";
}

// One-parameter reward family identified by its mean. Divergences are
// evaluated in closed form from means, so only the family kind and the
// Gaussian variance are carried around.
struct RewardFamily {
    RewardKind kind = RewardKind::gaussian;
    double variance = 1.0;  // lambda^2, Gaussian only

    static RewardFamily gaussian(double variance) {
        if (!(variance > 0.0))
            throw std::invalid_argument("RewardFamily: Gaussian variance must be positive");
        return RewardFamily{RewardKind::gaussian, variance};
    }
    static RewardFamily bernoulli() { return RewardFamily{RewardKind::bernoulli, 0.0}; }
};

// Bernoulli divergence kl(x, y) = x ln(x/y) + (1-x) ln((1-x)/(1-y)), with the
// 0 ln 0 = 0 convention at the x endpoints. Throws when the divergence is
// infinite (mass where y has none).
inline double bern_kl(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw std::domain_error("bern_kl: arguments must lie in [0, 1]");
    if (x == y) return 0.0;
    if (y <= 0.0 || y >= 1.0) throw std::domain_error("bern_kl: divergence is infinite");
    double v = 0.0;
    if (x > 0.0) v += x * std::log(x / y);
    if (x < 1.0) v += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
    return std::max(0.0, v);
}

inline double kl(const RewardFamily& f, double mu1, double mu2) {
    if (f.kind == RewardKind::gaussian) {
        const double d = mu1 - mu2;
        return d * d / (2.0 * f.variance);
    }
    return bern_kl(mu1, mu2);
}

// Generalized Jensen-Shannon divergence I_alpha; the mixture is represented
// by its mean within the same family.
inline double gjs(const RewardFamily& f, double mu1, double mu2, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("gjs: alpha must lie in [0, 1]");
    if (alpha == 0.0 || alpha == 1.0) return 0.0;
    const double mix = alpha * mu1 + (1.0 - alpha) * mu2;
    return alpha * kl(f, mu1, mix) + (1.0 - alpha) * kl(f, mu2, mix);
}

// Weighted two-sample divergence to the pooled mean:
//   w1 KL(mu1, mix) + w2 KL(mu2, mix),  mix = (w1 mu1 + w2 mu2) / (w1 + w2).
// Equals (w1 + w2) I_{w1/(w1+w2)}(mu1, mu2); shared by the lower-bound
// objective and the GLRT statistic.
inline double pairwise_rate(const RewardFamily& f, double mu1, double mu2, double w1, double w2) {
    if (!(w1 > 0.0) || !(w2 > 0.0)) return 0.0;
    const double mix = (w1 * mu1 + w2 * mu2) / (w1 + w2);
    return w1 * kl(f, mu1, mix) + w2 * kl(f, mu2, mix);
}

// A feedback graph together with per-vertex reward means. The best vertex
// must be unique; Bernoulli means must be interior to (0, 1).
class Instance {
public:
    Instance(FeedbackGraph graph, RewardFamily family, std::vector<double> means)
        : graph_(std::move(graph)), family_(family), means_(std::move(means)) {
        const int k = graph_.size();
        if (static_cast<int>(means_.size()) != k)
            throw std::invalid_argument("Instance: means must have one entry per vertex");
        if (family_.kind == RewardKind::bernoulli)
            for (double m : means_)
                if (!(m > 0.0 && m < 1.0))
                    throw std::invalid_argument("Instance: Bernoulli means must lie in (0, 1)");
        best_ = 0;
        for (int u = 1; u < k; ++u)
            if (means_[u] > means_[best_]) best_ = u;
        for (int u = 0; u < k; ++u)
            if (u != best_ && means_[u] == means_[best_])
                throw std::invalid_argument("Instance: the best vertex must be unique");
    }

    const FeedbackGraph& graph() const { return graph_; }
    const RewardFamily& family() const { return family_; }
    const std::vector<double>& means() const { return means_; }
    int size() const { return graph_.size(); }
    int best_vertex() const { return best_; }

    // Sub-optimality gap; the best vertex carries the minimum gap.
    double gap(int u) const { return u == best_ ? min_gap() : means_[best_] - means_[u]; }

    double min_gap() const {
        double g = std::numeric_limits<double>::infinity();
        for (int u = 0; u < graph_.size(); ++u)
            if (u != best_) g = std::min(g, means_[best_] - means_[u]);
        return g;
    }

private:
    FeedbackGraph graph_;
    RewardFamily family_;
    std::vector<double> means_;
    int best_;
};

}  // namespace fgx
