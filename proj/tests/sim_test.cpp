#include "fgx/sim.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fgx/graph_gen.hpp"
#include "fgx/rng.hpp"

using namespace fgx;

namespace {

Instance loopy_star_instance(double p) {
    FamilyParams params;
    params.p = p;
    params.q = 0.25;
    params.r = 0.25;
    return Instance(generate_graph(GraphFamily::loopy_star, 5, params),
                    RewardFamily::gaussian(1.0), {0.5, 0.5, 0.5, 0.5, 1.0});
}

TEST(RngStream, DeterministicAndKeyed) {
    RngStream a(42, 7, StreamPurpose::rewards);
    RngStream b(42, 7, StreamPurpose::rewards);
    RngStream c(42, 7, StreamPurpose::activations);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t xa = a.next_u64();
        all_equal &= xa == b.next_u64();
        any_diff |= xa != c.next_u64();
    }
    EXPECT_TRUE(all_equal);
    EXPECT_TRUE(any_diff);
}

TEST(RngStream, UniformBounds) {
    RngStream rng(1, 0, StreamPurpose::algorithm);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        const double v = rng.uniform_open01();
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(Step, NoOutEdgesNoObservations) {
    // vertex 1 has no out-edges at all
    std::vector<double> w = {1.0, 1.0,  //
                             0.0, 0.0};
    const Instance inst(FeedbackGraph(2, std::move(w)), RewardFamily::gaussian(1.0), {1.0, 0.0});
    EnvStreams env = EnvStreams::for_run(3, 0);
    const Observation obs = step(inst, 1, FeedbackMode::informed, env);
    EXPECT_EQ(obs.chosen, 1);
    EXPECT_EQ(obs.z, (std::vector<double>{0.0, 0.0}));
    ASSERT_TRUE(obs.activated.has_value());
    EXPECT_TRUE(obs.activated->empty());
}

TEST(Step, DeterministicEdgeDeliversTheMean) {
    // sure edges and a vanishing variance pin the observation at the mean
    const Instance inst(generate_graph(GraphFamily::full_feedback, 3),
                        RewardFamily::gaussian(1e-30), {0.5, 0.2, 0.9});
    EnvStreams env = EnvStreams::for_run(11, 0);
    const Observation obs = step(inst, 0, FeedbackMode::informed, env);
    ASSERT_EQ(obs.activated->size(), 3u);
    for (int u = 0; u < 3; ++u) EXPECT_NEAR(obs.z[u], inst.means()[u], 1e-9);
}

TEST(Step, UninformedOmitsActivatedSet) {
    const Instance inst = loopy_star_instance(0.2);
    EnvStreams env = EnvStreams::for_run(5, 0);
    const Observation obs = step(inst, 0, FeedbackMode::uninformed, env);
    EXPECT_FALSE(obs.activated.has_value());
}

TEST(Step, HubToTargetActivationFrequency) {
    const Instance inst = loopy_star_instance(0.2);
    EnvStreams env = EnvStreams::for_run(2026, 0);
    const int n = 100000;
    int fired = 0;
    for (int i = 0; i < n; ++i) {
        const Observation obs = step(inst, 0, FeedbackMode::uninformed, env);
        if (obs.z[4] != 0.0) ++fired;
    }
    const double freq = static_cast<double>(fired) / n;
    const double half_width = 3.0 * std::sqrt(0.2 * 0.8 / n);
    EXPECT_NEAR(freq, 0.2, half_width);
}

TEST(Step, ConditionalSampleMeanConverges) {
    const Instance inst = loopy_star_instance(0.2);
    EnvStreams env = EnvStreams::for_run(909, 0);
    const int n = 100000;
    long count = 0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const Observation obs = step(inst, 4, FeedbackMode::informed, env);
        for (int u : *obs.activated) {
            if (u != 4) continue;
            sum += obs.z[4];
            ++count;
        }
    }
    ASSERT_GT(count, 0);
    const double mean = sum / static_cast<double>(count);
    const double tol = 4.0 / std::sqrt(static_cast<double>(count));  // 4 standard errors
    EXPECT_NEAR(mean, 1.0, tol);
}

TEST(Step, ContinuousObservationsNeverExactlyZero) {
    const Instance inst(generate_graph(GraphFamily::full_feedback, 2),
                        RewardFamily::gaussian(1.0), {0.0, 1.0});
    EnvStreams env = EnvStreams::for_run(77, 0);
    long zeros = 0;
    for (int i = 0; i < 500000; ++i) {
        const Observation obs = step(inst, 0, FeedbackMode::uninformed, env);
        if (obs.z[0] == 0.0) ++zeros;
        if (obs.z[1] == 0.0) ++zeros;
    }
    EXPECT_EQ(zeros, 0);
}

TEST(Step, BitwiseReproducible) {
    const Instance inst = loopy_star_instance(0.3);
    EnvStreams env1 = EnvStreams::for_run(123, 9);
    EnvStreams env2 = EnvStreams::for_run(123, 9);
    for (int i = 0; i < 2000; ++i) {
        const int v = i % 5;
        const Observation a = step(inst, v, FeedbackMode::informed, env1);
        const Observation b = step(inst, v, FeedbackMode::informed, env2);
        ASSERT_EQ(a.z, b.z);
        ASSERT_EQ(*a.activated, *b.activated);
    }
}

TEST(Step, AlgorithmStreamDoesNotDisturbEnvironment) {
    const Instance inst = loopy_star_instance(0.3);
    EnvStreams env1 = EnvStreams::for_run(55, 0);
    EnvStreams env2 = EnvStreams::for_run(55, 0);
    RngStream alg(55, 0, StreamPurpose::algorithm);
    for (int i = 0; i < 500; ++i) {
        const Observation a = step(inst, i % 5, FeedbackMode::uninformed, env1);
        alg.uniform01();  // extra algorithm-side draws
        alg.next_u64();
        const Observation b = step(inst, i % 5, FeedbackMode::uninformed, env2);
        ASSERT_EQ(a.z, b.z);
    }
}

}  // namespace
