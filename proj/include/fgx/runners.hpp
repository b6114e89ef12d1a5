#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgx/allocation.hpp"
#include "fgx/common.hpp"
#include "fgx/divergence.hpp"
#include "fgx/estimator.hpp"
#include "fgx/rng.hpp"
#include "fgx/sim.hpp"
#include "fgx/solver.hpp"
#include "fgx/stopping.hpp"
#include "fgx/tracking.hpp"

namespace fgx {

enum class AlgorithmId { tas_fg, tas_fg_heur, exp3g, ucb_fg_e, ucb_fg_v };

inline const char* to_string(AlgorithmId a) {
    switch (a) {
        case AlgorithmId::tas_fg: return "tas-fg";
        case AlgorithmId::tas_fg_heur: return "tas-fg-heur";
        case AlgorithmId::exp3g: return "exp3g";
        case AlgorithmId::ucb_fg_e: return "ucb-fg-e";
        case AlgorithmId::ucb_fg_v: return "ucb-fg-v";
    }
    return "?";
}

inline std::optional<AlgorithmId> algorithm_from_string(const std::string& s) {
    for (AlgorithmId a : {AlgorithmId::tas_fg, AlgorithmId::tas_fg_heur, AlgorithmId::exp3g,
                          AlgorithmId::ucb_fg_e, AlgorithmId::ucb_fg_v})
        if (s == to_string(a)) return a;
    return std::nullopt;
}

struct RunConfig {
    FeedbackMode mode = FeedbackMode::uninformed;
    StoppingConfig stopping{};
    long iteration_cap = 10'000'000;
    TrackingConfig tracking{};
    long warm_solver_iterations = 200;
};

struct RunRecord {
    std::string algorithm;
    std::uint64_t seed = 0;
    double delta = 0.0;
    ThresholdKind threshold_kind = ThresholdKind::practical;
    long tau = 0;
    int a_hat = -1;
    bool correct = false;
    bool truncated = false;
    double t_star = std::numeric_limits<double>::infinity();
    double normalized = 0.0;
    // stopping-rule trace
    double lambda_tau = 0.0;
    double beta_tau = 0.0;
    double lambda_prev = 0.0;
    double beta_prev = 0.0;
    long first_fully_observed = -1;
};

namespace detail {

class SamplingRule {
public:
    virtual ~SamplingRule() = default;
    virtual int select(const EstimatorState& est) = 0;
    virtual void observe(const Observation&, const EstimatorState&) {}
};

// Track-and-stop sampling: recompute the target allocation from the current
// estimates (exact maximin refinement or the closed-form heuristic), fold it
// into the running average, then apply averaged D-tracking.
class TrackAndStopRule final : public SamplingRule {
public:
    TrackAndStopRule(const Instance& inst, bool exact, const RunConfig& cfg)
        : inst_(inst), exact_(exact), cfg_(cfg),
          trk_(inst.size(), cfg.tracking), omega_(Allocation::uniform(inst.size())) {}

    int select(const EstimatorState& est) override {
        const int k = inst_.size();
        if (est.fully_observed()) {
            const std::vector<double> mu = est.mean_estimates_or(0.0);
            const int a_hat = est.best_estimate();
            const std::vector<double> g_hat = est.graph_estimate_matrix();
            const FeedbackGraph graph(k, g_hat);
            if (exact_) {
                const bool recompute =
                    k <= 6 || est.rounds() >= next_recompute_;
                if (recompute) {
                    omega_ = refine_allocation(graph, inst_.family(), mu, a_hat,
                                               omega_.values(), cfg_.warm_solver_iterations);
                    next_recompute_ =
                        est.rounds() + static_cast<long>(std::ceil(std::sqrt(
                                           static_cast<double>(std::max<long>(est.rounds(), 1)))));
                }
            } else {
                auto heur = heuristic_allocation_impl(graph, mu, a_hat);
                omega_ = heur ? Allocation(std::move(*heur)) : Allocation::uniform(k);
            }
        } else {
            omega_ = Allocation::uniform(k);
        }
        trk_.fold(omega_);
        return select_vertex_dtracking(est, trk_);
    }

private:
    const Instance& inst_;
    bool exact_;
    RunConfig cfg_;
    TrackingState trk_;
    Allocation omega_;
    long next_recompute_ = 0;
};

// EXP3.G: sample from p = (1 - eta) q + eta U and update q from importance
// weighted losses x_u = -z_u / sum_{v in N_in(u)} p_v, with the
// in-neighborhoods taken from the (optimistically initialized) graph
// estimate. Weights are kept in log space.
class Exp3GRule final : public SamplingRule {
public:
    Exp3GRule(const Instance& inst, std::uint64_t seed)
        : k_(inst.size()), eta_(0.3), log_q_(k_, 0.0), p_(k_, 1.0 / k_),
          rng_(seed, 0, StreamPurpose::algorithm) {}

    int select(const EstimatorState&) override {
        double max_lq = *std::max_element(log_q_.begin(), log_q_.end());
        double total = 0.0;
        std::vector<double> q(k_);
        for (int u = 0; u < k_; ++u) {
            q[u] = std::exp(log_q_[u] - max_lq);
            total += q[u];
        }
        for (int u = 0; u < k_; ++u)
            p_[u] = (1.0 - eta_) * q[u] / total + eta_ / k_;
        return rng_.categorical(p_);
    }

    void observe(const Observation& obs, const EstimatorState& est) override {
        for (int u = 0; u < k_; ++u) {
            double denom = 0.0;
            for (int v = 0; v < k_; ++v)
                if (est.graph_estimate(v, u) > 0.0) denom += p_[v];
            if (denom <= 0.0) continue;
            const double x = -obs.z[u] / denom;
            log_q_[u] -= eta_ * x;
        }
    }

    const std::vector<double>& selection_probabilities() const { return p_; }

private:
    int k_;
    double eta_;
    std::vector<double> log_q_;
    std::vector<double> p_;
    RngStream rng_;
};

// UCB on the estimated graph and means. Variant E acts greedily on the upper
// confidence bound of (G mu)_u; variant V chases the best observer of the
// UCB-optimal vertex. Unobserved quantities carry an effectively infinite
// bonus so every vertex is forced in first.
class UcbFgRule final : public SamplingRule {
public:
    UcbFgRule(const Instance& inst, bool variant_v) : k_(inst.size()), variant_v_(variant_v) {}

    int select(const EstimatorState& est) override {
        constexpr double big = 1e18;
        const long t = est.rounds();
        const double lt = std::log1p(static_cast<double>(t));

        std::vector<double> mu_ucb(k_);
        for (int u = 0; u < k_; ++u) {
            const long m = est.observations(u);
            mu_ucb[u] = m == 0 ? big
                               : est.mean_estimate(u) + std::sqrt(2.0 * lt / static_cast<double>(m));
        }
        auto g_ucb = [&](int v, int u) {
            const long n = est.pulls(v);
            if (n == 0) return 1.0;
            return std::min(1.0, est.graph_estimate(v, u) +
                                     std::sqrt(lt / (2.0 * static_cast<double>(n))));
        };

        int pick = 0;
        if (variant_v_) {
            int a_ucb = 0;
            for (int u = 1; u < k_; ++u)
                if (mu_ucb[u] > mu_ucb[a_ucb]) a_ucb = u;
            double best = -1.0;
            for (int v = 0; v < k_; ++v) {
                const double g = g_ucb(v, a_ucb);
                if (g > best) {
                    best = g;
                    pick = v;
                }
            }
        } else {
            double best = -std::numeric_limits<double>::infinity();
            for (int u = 0; u < k_; ++u) {
                double score = 0.0;
                for (int v = 0; v < k_; ++v) score += g_ucb(u, v) * mu_ucb[v];
                if (score > best) {
                    best = score;
                    pick = u;
                }
            }
        }
        return pick;
    }

private:
    int k_;
    bool variant_v_;
};

inline std::unique_ptr<SamplingRule> make_rule(AlgorithmId id, const Instance& inst,
                                               const RunConfig& cfg, std::uint64_t seed) {
    switch (id) {
        case AlgorithmId::tas_fg: return std::make_unique<TrackAndStopRule>(inst, true, cfg);
        case AlgorithmId::tas_fg_heur: return std::make_unique<TrackAndStopRule>(inst, false, cfg);
        case AlgorithmId::exp3g: return std::make_unique<Exp3GRule>(inst, seed);
        case AlgorithmId::ucb_fg_e: return std::make_unique<UcbFgRule>(inst, false);
        case AlgorithmId::ucb_fg_v: return std::make_unique<UcbFgRule>(inst, true);
    }
    throw std::invalid_argument("make_rule: unknown algorithm");
}

}  // namespace detail

// Runs one algorithm to its stopping time. Every algorithm shares the same
// estimation procedure, GLRT statistic, and threshold; only the sampling
// rule differs. A run that reaches the iteration cap is flagged truncated.
inline RunRecord run_algorithm(AlgorithmId id, const Instance& inst, const RunConfig& cfg,
                               std::uint64_t seed, double t_star) {
    if (inst.family().kind == RewardKind::bernoulli && cfg.mode == FeedbackMode::uninformed)
        throw std::domain_error(
            "run_algorithm: Bernoulli rewards are unidentifiable in the uninformed mode");
    if (!classify_observability(inst.graph()).observable())
        throw std::domain_error("run_algorithm: instance is not observable");

    const int k = inst.size();
    EnvStreams env = EnvStreams::for_run(seed, 0);
    EstimatorState est(k);
    std::unique_ptr<detail::SamplingRule> rule = detail::make_rule(id, inst, cfg, seed);
    const double beta_const = threshold_constant(cfg.stopping, k);

    RunRecord rec;
    rec.algorithm = to_string(id);
    rec.seed = seed;
    rec.delta = cfg.stopping.delta;
    rec.threshold_kind = cfg.stopping.kind;
    rec.t_star = t_star;

    double lambda_prev = 0.0, beta_prev = 0.0;
    bool have_prev = false;
    while (true) {
        const long t = est.rounds();
        if (est.fully_observed()) {
            if (rec.first_fully_observed < 0) rec.first_fully_observed = t;
            const double lambda = glrt_statistic(est, inst.family());
            const double beta = threshold_from_constant(cfg.stopping, beta_const, t);
            if (lambda >= beta) {
                rec.tau = t;
                rec.lambda_tau = lambda;
                rec.beta_tau = beta;
                rec.lambda_prev = have_prev ? lambda_prev : 0.0;
                rec.beta_prev = have_prev ? beta_prev : 0.0;
                break;
            }
            lambda_prev = lambda;
            beta_prev = beta;
            have_prev = true;
        }
        if (t >= cfg.iteration_cap) {
            rec.tau = t;
            rec.truncated = true;
            rec.lambda_tau = have_prev ? lambda_prev : 0.0;
            rec.beta_tau = have_prev ? beta_prev : 0.0;
            break;
        }
        const int v = rule->select(est);
        Observation obs = step(inst, v, cfg.mode, env);
        est.update(obs, cfg.mode);
        rule->observe(obs, est);
    }

    rec.a_hat = est.best_estimate();
    rec.correct = rec.a_hat == inst.best_vertex();
    const double kl_confidence = bern_kl(cfg.stopping.delta, 1.0 - cfg.stopping.delta);
    if (std::isfinite(t_star) && t_star > 0.0)
        rec.normalized = static_cast<double>(rec.tau) / (t_star * kl_confidence);
    return rec;
}

}  // namespace fgx
