#include "fgx/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fgx/graph_gen.hpp"
#include "fgx/linalg.hpp"
#include "fgx/rng.hpp"
#include "fgx/solver.hpp"
#include "test_util.hpp"

using namespace fgx;

namespace {

Instance gaussian_instance(FeedbackGraph g, std::vector<double> means) {
    return Instance(std::move(g), RewardFamily::gaussian(1.0), std::move(means));
}

TEST(Linalg, KnownSpectra) {
    const std::vector<double> id = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    const auto s = singular_values(3, id);
    for (double x : s) EXPECT_NEAR(x, 1.0, 1e-12);

    const std::vector<double> diag = {3, 0, 0, 0, 1, 0, 0, 0, 2};
    const auto sd = singular_values(3, diag);
    EXPECT_NEAR(sd[0], 3.0, 1e-12);
    EXPECT_NEAR(sd[1], 2.0, 1e-12);
    EXPECT_NEAR(sd[2], 1.0, 1e-12);

    // rank-deficient
    const std::vector<double> sing = {1, 1, 1, 1};
    EXPECT_NEAR(min_singular_value(2, sing), 0.0, 1e-12);
    EXPECT_NEAR(singular_values(2, sing)[0], 2.0, 1e-12);
}

TEST(Linalg, FrobeniusIdentityOnRandomMatrices) {
    RngStream rng(3, 0, StreamPurpose::algorithm);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 6);
        std::vector<double> g(static_cast<std::size_t>(k) * k);
        double frob = 0.0;
        for (double& x : g) {
            x = rng.uniform01();
            frob += x * x;
        }
        const auto s = singular_values(k, g);
        double sum_sq = 0.0;
        for (double x : s) sum_sq += x * x;
        EXPECT_NEAR(sum_sq, frob, 1e-9 * std::max(1.0, frob));
        for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GE(s[i - 1], s[i]);
    }
}

TEST(ScalingBound, TwoArmBanditIsTight) {
    const Instance inst = gaussian_instance(generate_graph(GraphFamily::bandit, 2), {1.0, 0.0});
    // kappa = sigma - floor(sigma / (alpha + 1)) = 2, Gbar = 1, gap = 1
    EXPECT_NEAR(scaling_bound(inst), 8.0, 1e-12);
    const SolverResult res = solve_characteristic_time(inst);
    EXPECT_LE(res.t_star, scaling_bound(inst) * 1.02);
}

TEST(ScalingBound, HoldsOnCanonicalFamilies) {
    std::vector<Instance> instances;
    instances.push_back(gaussian_instance(generate_graph(GraphFamily::bandit, 5),
                                          {0.0, 0.25, 0.5, 0.75, 1.0}));
    instances.push_back(gaussian_instance(generate_graph(GraphFamily::revealing_action, 5),
                                          {0.0, 0.25, 0.5, 0.75, 1.0}));
    FamilyParams ring_p;
    ring_p.p = 0.3;
    instances.push_back(gaussian_instance(generate_graph(GraphFamily::ring, 5, ring_p),
                                          {0.0, 0.25, 0.5, 0.75, 1.0}));
    FamilyParams star_p;
    star_p.p = 0.2;
    star_p.q = 0.25;
    star_p.r = 0.25;
    instances.push_back(gaussian_instance(generate_graph(GraphFamily::loopy_star, 5, star_p),
                                          {0.5, 0.5, 0.5, 0.5, 1.0}));
    instances.push_back(gaussian_instance(generate_graph(GraphFamily::loopy_star_alt, 5),
                                          {1.0, 0.5, 0.5, 0.5, 0.5}));
    FamilyParams clique_p;
    clique_p.p = 0.5;
    instances.push_back(gaussian_instance(generate_graph(GraphFamily::loopless_clique, 4, clique_p),
                                          {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}));
    for (const Instance& inst : instances) {
        const SolverResult res = solve_characteristic_time(inst);
        EXPECT_LE(res.t_star, scaling_bound(inst) * 1.02);
    }
}

// the empirical referee for the bound's constant: the solver never exceeds it
// on randomized self-loop instances
TEST(ScalingBound, HoldsOnRandomInstances) {
    RngStream rng(41, 0, StreamPurpose::algorithm);
    int checked = 0;
    while (checked < 50) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 4);
        FeedbackGraph g = testutil::random_strongly_observable_graph(k, rng);
        const GraphQuantities q = graph_quantities(g);
        if (q.delta + q.sigma == 0) continue;
        const Instance inst(std::move(g), RewardFamily::gaussian(1.0),
                            testutil::random_distinct_means(k, rng));
        const SolverResult res = solve_characteristic_time(inst);
        EXPECT_LE(res.t_star, scaling_bound(inst) * 1.02) << "instance " << checked;
        ++checked;
    }
}

TEST(ScalingBound, InverseSquareGapScaling) {
    // doubling every mean doubles the gaps and quarters the bound
    const Instance base = gaussian_instance(generate_graph(GraphFamily::bandit, 3),
                                            {0.0, 0.5, 1.0});
    const Instance scaled = gaussian_instance(generate_graph(GraphFamily::bandit, 3),
                                              {0.0, 1.0, 2.0});
    EXPECT_NEAR(scaling_bound(scaled), scaling_bound(base) / 4.0, 1e-12);
}

TEST(ScalingBound, GaussianOnly) {
    const Instance inst(generate_graph(GraphFamily::bandit, 2), RewardFamily::bernoulli(),
                        {0.8, 0.4});
    EXPECT_THROW(scaling_bound(inst), std::invalid_argument);
}

TEST(HeuristicBound, IdentityGraphClosedForm) {
    const Instance inst = gaussian_instance(generate_graph(GraphFamily::bandit, 3),
                                            {0.0, 0.5, 1.0});
    // sigma_min(I) = 1 and ||Delta^-2||_1 = 1 + 4 + 4
    EXPECT_NEAR(heuristic_bound(inst), 4.0 * 9.0, 1e-9);
}

TEST(HeuristicBound, SingularGraphIsVacuous) {
    const Instance inst = gaussian_instance(generate_graph(GraphFamily::full_feedback, 3),
                                            {0.0, 0.5, 1.0});
    EXPECT_TRUE(std::isinf(heuristic_bound(inst)));
}

TEST(HeuristicBound, ChainOnRingAndClique) {
    FamilyParams ring_p;
    ring_p.p = 0.3;
    const Instance ring = gaussian_instance(generate_graph(GraphFamily::ring, 4, ring_p),
                                            {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0});
    FamilyParams clique_p;
    clique_p.p = 0.5;
    const Instance clique = gaussian_instance(generate_graph(GraphFamily::loopless_clique, 4, clique_p),
                                              {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0});
    for (const Instance* inst : {&ring, &clique}) {
        const double t_heur = 1.0 / inverse_time(*inst, heuristic_allocation(*inst));
        const double bound = heuristic_bound(*inst);
        const SolverResult res = solve_characteristic_time(*inst);
        EXPECT_LE(res.t_star, t_heur * 1.02);
        EXPECT_LE(t_heur, bound * (1.0 + 1e-9));
        EXPECT_TRUE(std::isfinite(bound));
    }
}

TEST(BernoulliConfusion, ZeroDivergenceCertificate) {
    RngStream rng(57, 0, StreamPurpose::algorithm);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 5);
        FeedbackGraph g = testutil::random_observable_graph(k, rng);
        std::vector<double> means(k);
        for (int u = 0; u < k; ++u) means[u] = 0.1 + 0.8 * rng.uniform01() + 1e-6 * u;
        Instance inst(std::move(g), RewardFamily::bernoulli(), means);
        for (int target = 0; target < k; ++target) {
            if (target == inst.best_vertex()) continue;
            const BernoulliConfusion conf = bernoulli_confusion(inst, target);
            EXPECT_LE(conf.divergence, 1e-12);
            for (double w : conf.graph.weights()) {
                EXPECT_GE(w, 0.0);
                EXPECT_LE(w, 1.0);
            }
            EXPECT_DOUBLE_EQ(conf.means[target], inst.means()[inst.best_vertex()]);
        }
    }
}

TEST(BernoulliConfusion, InputValidation) {
    const Instance bern(generate_graph(GraphFamily::bandit, 3), RewardFamily::bernoulli(),
                        {0.2, 0.8, 0.5});
    EXPECT_THROW(bernoulli_confusion(bern, 1), std::invalid_argument);  // target is the best
    const Instance gauss(generate_graph(GraphFamily::bandit, 3), RewardFamily::gaussian(1.0),
                         {0.2, 0.8, 0.5});
    EXPECT_THROW(bernoulli_confusion(gauss, 0), std::invalid_argument);
}

}  // namespace
