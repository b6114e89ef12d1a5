#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fgx/allocation.hpp"
#include "fgx/estimator.hpp"

namespace fgx {

enum class SmoothingKind { average, exponential };

struct TrackingConfig {
    SmoothingKind kind = SmoothingKind::average;
    double lambda = 0.9;  // exponential smoothing factor, in (0, 1)
};

// Convex combination of the allocation targets seen so far. The average kind
// uses weights 1/t; the exponential kind uses kappa_t lambda^{t-n} with
// kappa_t = (1-lambda)/(1-lambda^t). Both weight sequences sum to one.
class TrackingState {
public:
    TrackingState(int k, TrackingConfig cfg = {}) : cfg_(cfg), acc_(k, 0.0) {
        if (cfg_.kind == SmoothingKind::exponential &&
            !(cfg_.lambda > 0.0 && cfg_.lambda < 1.0))
            throw std::invalid_argument("TrackingState: lambda must lie in (0, 1)");
    }

    void fold(const Allocation& omega) {
        if (omega.size() != static_cast<int>(acc_.size()))
            throw std::invalid_argument("TrackingState: size mismatch");
        if (cfg_.kind == SmoothingKind::average) {
            for (int u = 0; u < omega.size(); ++u) acc_[u] += omega[u];
        } else {
            for (int u = 0; u < omega.size(); ++u)
                acc_[u] = cfg_.lambda * acc_[u] + omega[u];
        }
        ++folded_;
    }

    long folded() const { return folded_; }

    // t * sum_n alpha_{t,n} omega(n), the pull-count target.
    double target(int u) const {
        if (folded_ == 0) return 0.0;
        if (cfg_.kind == SmoothingKind::average) return acc_[u];
        const double kappa = (1.0 - cfg_.lambda) /
                             (1.0 - std::pow(cfg_.lambda, static_cast<double>(folded_)));
        return static_cast<double>(folded_) * kappa * acc_[u];
    }

private:
    TrackingConfig cfg_;
    long folded_ = 0;
    std::vector<double> acc_;
};

// Averaged D-tracking selection: force any vertex whose pull count fell below
// sqrt(t) - k/2, otherwise chase the averaged allocation target. Ties go to
// the smallest index.
inline int select_vertex_dtracking(const EstimatorState& est, const TrackingState& trk) {
    const int k = est.size();
    const double t = static_cast<double>(est.rounds());
    const double floor_level = std::sqrt(t) - k / 2.0;

    int forced = -1;
    for (int u = 0; u < k; ++u) {
        if (static_cast<double>(est.pulls(u)) >= floor_level) continue;
        if (forced < 0 || est.pulls(u) < est.pulls(forced)) forced = u;
    }
    if (forced >= 0) return forced;

    int pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int u = 0; u < k; ++u) {
        const double d = static_cast<double>(est.pulls(u)) - trk.target(u);
        if (d < best) {
            best = d;
            pick = u;
        }
    }
    return pick;
}

}  // namespace fgx
