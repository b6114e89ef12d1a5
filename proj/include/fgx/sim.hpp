#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fgx/common.hpp"
#include "fgx/divergence.hpp"
#include "fgx/rng.hpp"

namespace fgx {

// One round of feedback: z_u = Y_u * R_u for every vertex, where Y_u is the
// activation of edge (chosen, u). The activated set is attached only in the
// informed mode.
struct Observation {
    int chosen = -1;
    std::vector<double> z;
    std::optional<std::vector<int>> activated;
};

// Environment randomness for a single run. Activation and reward draws use
// separate streams so that algorithm-internal randomness never shifts the
// environment sequence.
struct EnvStreams {
    RngStream activations;
    RngStream rewards;

    static EnvStreams for_run(std::uint64_t seed, std::uint64_t run) {
        return EnvStreams{RngStream(seed, run, StreamPurpose::activations),
                          RngStream(seed, run, StreamPurpose::rewards)};
    }
};

namespace detail {

inline double draw_reward(const RewardFamily& f, double mean, RngStream& rng) {
    if (f.kind == RewardKind::gaussian) return rng.gaussian(mean, f.variance);
    return rng.bernoulli(mean) ? 1.0 : 0.0;
}

}  // namespace detail

// Activations consume exactly k draws per step; rewards are drawn lazily,
// one per activated edge.
inline Observation step(const Instance& inst, int v, FeedbackMode mode, EnvStreams& env) {
    const int k = inst.size();
    if (v < 0 || v >= k) throw std::invalid_argument("step: vertex out of range");
    Observation obs;
    obs.chosen = v;
    obs.z.assign(k, 0.0);
    std::vector<int> fired;
    for (int u = 0; u < k; ++u) {
        if (env.activations.bernoulli(inst.graph().weight(v, u))) {
            obs.z[u] = detail::draw_reward(inst.family(), inst.means()[u], env.rewards);
            fired.push_back(u);
        }
    }
    if (mode == FeedbackMode::informed) obs.activated = std::move(fired);
    return obs;
}

}  // namespace fgx
