#include "fgx/stopping.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fgx/allocation.hpp"
#include "fgx/graph_gen.hpp"
#include "fgx/sim.hpp"

using namespace fgx;

namespace {

Observation make_obs(int chosen, std::vector<double> z, std::vector<int> activated) {
    Observation obs;
    obs.chosen = chosen;
    obs.z = std::move(z);
    obs.activated = std::move(activated);
    return obs;
}

TEST(HInverse, RoundTrips) {
    for (double u : {1.5, 3.0, 10.0}) {
        const double y = detail::stopping_h(u);
        EXPECT_NEAR(detail::stopping_h_inv(y), u, 1e-10);
    }
    EXPECT_DOUBLE_EQ(detail::stopping_h_inv(1.0), 1.0);
    EXPECT_THROW(detail::stopping_h_inv(0.5), std::domain_error);
}

TEST(CExp, DominatesIdentityAndTracksAsymptote) {
    // frozen from an extended-precision evaluation of the definition
    EXPECT_NEAR(c_exp(0.5 * std::log(40.0)), 10.613729572646868, 1e-9);
    for (int x = 5; x <= 50; ++x) {
        const double exact = c_exp(static_cast<double>(x));
        EXPECT_GE(exact, static_cast<double>(x));
        const double approx = x + 4.0 * std::log(1.0 + x + std::sqrt(2.0 * x));
        // the closed-form shorthand is loose at both ends of the range; the
        // measured envelope is 1.34
        EXPECT_NEAR(exact, approx, 1.5);
    }
}

TEST(Threshold, PracticalAtFirstRound) {
    StoppingConfig cfg;
    cfg.kind = ThresholdKind::practical;
    cfg.delta = 0.1;
    EXPECT_NEAR(threshold(cfg, 1, 5), std::log(10.0), 1e-12);
    // grows doubly logarithmically
    EXPECT_NEAR(threshold(cfg, 1000, 5),
                std::log(10.0) + 3.0 * std::log1p(2.0 * std::log(1000.0)), 1e-12);
}

TEST(Threshold, TheoreticalMatchesConstantPlusLogLog) {
    StoppingConfig cfg;
    cfg.kind = ThresholdKind::theoretical;
    cfg.delta = 0.1;
    const double expected =
        2.0 * c_exp(0.5 * std::log(4.0 / 0.1)) + 6.0 * std::log1p(std::log(1000.0));
    EXPECT_NEAR(threshold(cfg, 1000, 5), expected, 1e-12);
    EXPECT_NEAR(threshold_from_constant(cfg, threshold_constant(cfg, 5), 1000), expected, 1e-12);
    EXPECT_GT(threshold(cfg, 10, 5), threshold(StoppingConfig{ThresholdKind::practical, 0.1}, 10, 5));
}

TEST(Threshold, Validation) {
    StoppingConfig cfg;
    cfg.delta = 0.0;
    EXPECT_THROW(threshold(cfg, 1, 3), std::invalid_argument);
    cfg.delta = 0.5;
    EXPECT_THROW(threshold(cfg, 0, 3), std::invalid_argument);
}

TEST(Glrt, ZeroUntilEveryVertexObserved) {
    EstimatorState est(2);
    est.update(make_obs(0, {1.0, 0.0}, {0}), FeedbackMode::informed);
    EXPECT_DOUBLE_EQ(glrt_statistic(est, RewardFamily::gaussian(1.0)), 0.0);
}

TEST(Glrt, TiedLeadersGiveZero) {
    EstimatorState est(2);
    est.update(make_obs(0, {0.4, 0.4}, {0, 1}), FeedbackMode::informed);
    EXPECT_DOUBLE_EQ(glrt_statistic(est, RewardFamily::gaussian(1.0)), 0.0);
}

TEST(Glrt, HandComputedTwoArmValue) {
    // 100 observations each at means 1 and 0: pooled mean 1/2 and
    // 100 * (1/8) evidence from each side
    EstimatorState est(2);
    for (int i = 0; i < 100; ++i)
        est.update(make_obs(0, {1.0, 0.0}, {0, 1}), FeedbackMode::informed);
    EXPECT_EQ(est.observations(0), 100);
    EXPECT_EQ(est.observations(1), 100);
    EXPECT_DOUBLE_EQ(est.mean_estimate(0), 1.0);
    EXPECT_DOUBLE_EQ(est.mean_estimate(1), 0.0);
    EXPECT_NEAR(glrt_statistic(est, RewardFamily::gaussian(1.0)), 25.0, 1e-12);
}

// the statistic equals t * inverse_time(N_t / t) under the estimated model
TEST(Glrt, MatchesRescaledInverseTime) {
    FamilyParams params;
    params.p = 0.2;
    params.q = 0.25;
    params.r = 0.25;
    const Instance inst(generate_graph(GraphFamily::loopy_star, 5, params),
                        RewardFamily::gaussian(1.0), {0.5, 0.45, 0.55, 0.6, 1.0});
    EnvStreams env = EnvStreams::for_run(404, 0);
    EstimatorState est(5);
    RngStream picker(404, 1, StreamPurpose::algorithm);
    for (int t = 0; t < 4000; ++t) {
        const int v = static_cast<int>(picker.next_u64() % 5);
        est.update(step(inst, v, FeedbackMode::uninformed, env), FeedbackMode::uninformed);
    }
    ASSERT_TRUE(est.fully_observed());

    const int k = 5;
    const FeedbackGraph g_hat(k, est.graph_estimate_matrix());
    const std::vector<double> mu_hat = est.mean_estimates_or(0.0);
    std::vector<double> visit_freq(k);
    for (int v = 0; v < k; ++v)
        visit_freq[v] = static_cast<double>(est.pulls(v)) / static_cast<double>(est.rounds());
    const double rate = detail::inverse_time_impl(g_hat, inst.family(), mu_hat,
                                                  est.best_estimate(), visit_freq);
    EXPECT_NEAR(glrt_statistic(est, inst.family()), est.rounds() * rate, 1e-9);
}

}  // namespace
