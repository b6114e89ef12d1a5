#include "fgx/tracking.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fgx/allocation.hpp"
#include "fgx/estimator.hpp"

using namespace fgx;

namespace {

// drives the selection rule with a fixed allocation and no environment:
// every selection just bumps the pull count
struct DeterministicTracker {
    EstimatorState est;
    TrackingState trk;

    DeterministicTracker(int k, TrackingConfig cfg = {}) : est(k), trk(k, cfg) {}

    int advance(const Allocation& omega) {
        trk.fold(omega);
        const int v = select_vertex_dtracking(est, trk);
        Observation obs;
        obs.chosen = v;
        obs.z.assign(est.size(), 0.0);
        obs.activated = std::vector<int>{};
        est.update(obs, FeedbackMode::informed);
        return v;
    }
};

TEST(Tracking, FirstSelectionIsSmallestIndex) {
    DeterministicTracker t(4);
    EXPECT_EQ(t.advance(Allocation::uniform(4)), 0);
}

TEST(Tracking, SymmetricTieGoesToSmallestIndex) {
    DeterministicTracker t(3);
    const Allocation u = Allocation::uniform(3);
    EXPECT_EQ(t.advance(u), 0);
    EXPECT_EQ(t.advance(u), 1);
    EXPECT_EQ(t.advance(u), 2);
    EXPECT_EQ(t.advance(u), 0);
}

TEST(Tracking, ConvergesToFixedAllocation) {
    const std::vector<std::vector<double>> targets = {
        {0.5, 0.2, 0.1, 0.1, 0.1},
        {0.9, 0.025, 0.025, 0.025, 0.025},
        {0.2, 0.2, 0.2, 0.2, 0.2},
    };
    for (const auto& target : targets) {
        DeterministicTracker t(5);
        const Allocation omega{std::vector<double>(target)};
        for (int n = 0; n < 10000; ++n) t.advance(omega);
        for (int u = 0; u < 5; ++u)
            EXPECT_NEAR(static_cast<double>(t.est.pulls(u)) / 10000.0, target[u], 0.05);
    }
}

TEST(Tracking, ForcedExplorationFloor) {
    // an adversarially lopsided target still cannot starve any vertex
    DeterministicTracker t(5);
    const Allocation omega{std::vector<double>{0.96, 0.01, 0.01, 0.01, 0.01}};
    for (int n = 1; n <= 10000; ++n) {
        t.advance(omega);
        long min_pulls = t.est.pulls(0);
        for (int u = 1; u < 5; ++u) min_pulls = std::min(min_pulls, t.est.pulls(u));
        EXPECT_GE(static_cast<double>(min_pulls), std::sqrt(static_cast<double>(n)) - 2.5 - 1.0)
            << "failed at round " << n;
    }
}

TEST(Tracking, ExponentialSmoothingTracksRecentTargets) {
    TrackingConfig cfg;
    cfg.kind = SmoothingKind::exponential;
    cfg.lambda = 0.5;
    TrackingState trk(2, cfg);
    // constant targets: smoothed combination equals the target itself
    const Allocation a{std::vector<double>{0.75, 0.25}};
    for (int n = 1; n <= 20; ++n) {
        trk.fold(a);
        EXPECT_NEAR(trk.target(0), 0.75 * n, 1e-9);
    }
    // switch targets: the combination leans toward the new one
    TrackingState trk2(2, cfg);
    const Allocation b{std::vector<double>{0.1, 0.9}};
    for (int n = 0; n < 10; ++n) trk2.fold(a);
    for (int n = 0; n < 10; ++n) trk2.fold(b);
    EXPECT_LT(trk2.target(0) / 20.0, 0.2);
}

TEST(Tracking, AverageTargetIsPlainSum) {
    TrackingState trk(2);
    trk.fold(Allocation{std::vector<double>{1.0, 0.0}});
    trk.fold(Allocation{std::vector<double>{0.0, 1.0}});
    EXPECT_DOUBLE_EQ(trk.target(0), 1.0);
    EXPECT_DOUBLE_EQ(trk.target(1), 1.0);
}

TEST(Tracking, LambdaValidation) {
    TrackingConfig cfg;
    cfg.kind = SmoothingKind::exponential;
    cfg.lambda = 1.0;
    EXPECT_THROW(TrackingState(2, cfg), std::invalid_argument);
}

}  // namespace
