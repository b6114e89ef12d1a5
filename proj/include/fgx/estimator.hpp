#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

#include "fgx/common.hpp"
#include "fgx/sim.hpp"

namespace fgx {

// Running counts and maximum-likelihood estimates. In the informed mode the
// activated set is read off the observation; in the uninformed mode an edge
// counts as activated iff its observation is nonzero (exact comparison),
// which is almost surely correct for continuous rewards.
class EstimatorState {
public:
    explicit EstimatorState(int k)
        : k_(k), pulls_(k, 0), edges_(static_cast<std::size_t>(k) * k, 0), obs_(k, 0),
          reward_sum_(k, 0.0) {}

    void update(const Observation& obs, FeedbackMode mode) {
        const int v = obs.chosen;
        if (v < 0 || v >= k_) throw std::invalid_argument("EstimatorState: bad observation");
        if (mode == FeedbackMode::informed) {
            if (!obs.activated) throw std::invalid_argument("EstimatorState: missing activated set");
            for (int u : *obs.activated) record(v, u, obs.z[u]);
        } else {
            for (int u = 0; u < k_; ++u)
                if (obs.z[u] != 0.0) record(v, u, obs.z[u]);
        }
        ++pulls_[v];
        ++t_;
    }

    int size() const { return k_; }
    long rounds() const { return t_; }
    long pulls(int v) const { return pulls_[v]; }
    long edge_count(int v, int u) const { return edges_[static_cast<std::size_t>(v) * k_ + u]; }
    long observations(int u) const { return obs_[u]; }
    double reward_sum(int u) const { return reward_sum_[u]; }

    bool fully_observed() const {
        for (long m : obs_)
            if (m == 0) return false;
        return true;
    }

    double mean_estimate(int u) const {
        assert(obs_[u] > 0);
        return reward_sum_[u] / static_cast<double>(obs_[u]);
    }

    // Optimistic prior: every edge probability is 1 until its source vertex
    // has been pulled.
    double graph_estimate(int v, int u) const {
        if (pulls_[v] == 0) return 1.0;
        return static_cast<double>(edge_count(v, u)) / static_cast<double>(pulls_[v]);
    }

    std::vector<double> graph_estimate_matrix() const {
        std::vector<double> g(static_cast<std::size_t>(k_) * k_);
        for (int v = 0; v < k_; ++v)
            for (int u = 0; u < k_; ++u) g[static_cast<std::size_t>(v) * k_ + u] = graph_estimate(v, u);
        return g;
    }

    std::vector<double> mean_estimates_or(double fallback) const {
        std::vector<double> mu(k_, fallback);
        for (int u = 0; u < k_; ++u)
            if (obs_[u] > 0) mu[u] = mean_estimate(u);
        return mu;
    }

    // Estimated best vertex among observed vertices, smallest index on ties;
    // -1 when nothing has been observed yet.
    int best_estimate() const {
        int best = -1;
        double best_mu = 0.0;
        for (int u = 0; u < k_; ++u) {
            if (obs_[u] == 0) continue;
            const double mu = mean_estimate(u);
            if (best < 0 || mu > best_mu) {
                best = u;
                best_mu = mu;
            }
        }
        return best;
    }

private:
    void record(int v, int u, double z) {
        ++edges_[static_cast<std::size_t>(v) * k_ + u];
        ++obs_[u];
        reward_sum_[u] += z;
    }

    int k_;
    long t_ = 0;
    std::vector<long> pulls_;
    std::vector<long> edges_;
    std::vector<long> obs_;
    std::vector<double> reward_sum_;
};

}  // namespace fgx
