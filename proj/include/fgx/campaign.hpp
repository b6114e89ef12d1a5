#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fgx/config.hpp"
#include "fgx/runners.hpp"
#include "fgx/solver.hpp"

namespace fgx {

struct CampaignResult {
    ExperimentConfig config;
    double t_star = 0.0;
    std::vector<RunRecord> records;  // canonical (algorithm, delta, seed) order
};

namespace detail {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

// Executes every (algorithm, delta, seed) cell of a campaign. Work is spread
// over a thread pool but results are merged in canonical order, so the output
// is independent of scheduling.
inline CampaignResult run_campaign(const ExperimentConfig& cfg, int workers = 0) {
    const Instance inst = cfg.build_instance();

    SolverConfig scfg;
    scfg.mode = cfg.mode;
    const SolverResult sol = solve_characteristic_time(inst, scfg);

    struct Cell {
        AlgorithmId algorithm;
        double delta;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (AlgorithmId a : cfg.algorithms)
        for (double d : cfg.deltas)
            for (std::uint64_t s = cfg.seed_lo; s <= cfg.seed_hi; ++s)
                cells.push_back(Cell{a, d, s});

    CampaignResult out;
    out.config = cfg;
    out.t_star = sol.t_star;
    out.records.resize(cells.size());

    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            RunConfig rc = cfg.run_config();
            rc.stopping.delta = cells[i].delta;
            out.records[i] =
                run_algorithm(cells[i].algorithm, inst, rc, cells[i].seed, sol.t_star);
        }
    };
    if (workers == 1 || cells.empty()) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

inline constexpr const char* csv_header =
    "seed,algorithm,delta,tau,correct,a_hat,t_star,normalized,threshold_kind,truncated";

// One row per run; vertex ids are 1-based in files.
inline void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << csv_header << "\n";
    for (const RunRecord& r : records) {
        os << r.seed << ',' << r.algorithm << ',' << detail::format_double(r.delta) << ','
           << r.tau << ',' << (r.correct ? 1 : 0) << ',' << (r.a_hat + 1) << ','
           << detail::format_double(r.t_star) << ',' << detail::format_double(r.normalized)
           << ',' << to_string(r.threshold_kind) << ',' << (r.truncated ? 1 : 0) << "\n";
    }
}

inline std::vector<RunRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != csv_header)
        throw std::runtime_error("read_csv: missing or unexpected header");
    std::vector<RunRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        f.push_back(cur);
        if (f.size() != 10) throw std::runtime_error("read_csv: malformed row: " + line);
        RunRecord r;
        r.seed = std::stoull(f[0]);
        r.algorithm = f[1];
        r.delta = std::stod(f[2]);
        r.tau = std::stol(f[3]);
        r.correct = f[4] == "1";
        r.a_hat = std::stoi(f[5]) - 1;
        r.t_star = std::stod(f[6]);
        r.normalized = std::stod(f[7]);
        r.threshold_kind =
            f[8] == "theoretical" ? ThresholdKind::theoretical : ThresholdKind::practical;
        r.truncated = f[9] == "1";
        out.push_back(std::move(r));
    }
    return out;
}

namespace detail {

// type-7 quantile on a sorted sample
inline double quantile_sorted(const std::vector<double>& xs, double q) {
    if (xs.empty()) return 0.0;
    const double pos = q * (xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= xs.size()) return xs.back();
    return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

}  // namespace detail

// Per (algorithm, delta) aggregate: count, error rate over stopped runs,
// and location/spread of tau and the normalized sample complexity.
inline nlohmann::json summarize(const std::vector<RunRecord>& records) {
    std::map<std::pair<std::string, double>, std::vector<const RunRecord*>> groups;
    for (const RunRecord& r : records) groups[{r.algorithm, r.delta}].push_back(&r);

    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [key, runs] : groups) {
        std::vector<double> tau, norm;
        long errors = 0, truncated = 0;
        for (const RunRecord* r : runs) {
            tau.push_back(static_cast<double>(r->tau));
            norm.push_back(r->normalized);
            if (r->truncated) ++truncated;
            else if (!r->correct) ++errors;
        }
        std::sort(tau.begin(), tau.end());
        std::sort(norm.begin(), norm.end());
        auto mean = [](const std::vector<double>& xs) {
            double s = 0.0;
            for (double x : xs) s += x;
            return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
        };
        nlohmann::json cell;
        cell["algorithm"] = key.first;
        cell["delta"] = key.second;
        cell["count"] = runs.size();
        cell["errors"] = errors;
        cell["error_rate"] = runs.empty() ? 0.0 : static_cast<double>(errors) / runs.size();
        cell["truncated"] = truncated;
        cell["t_star"] = runs.front()->t_star;
        cell["tau"] = {{"mean", mean(tau)},
                       {"median", detail::quantile_sorted(tau, 0.5)},
                       {"q25", detail::quantile_sorted(tau, 0.25)},
                       {"q75", detail::quantile_sorted(tau, 0.75)}};
        cell["normalized"] = {{"mean", mean(norm)},
                              {"median", detail::quantile_sorted(norm, 0.5)},
                              {"q25", detail::quantile_sorted(norm, 0.25)},
                              {"q75", detail::quantile_sorted(norm, 0.75)}};
        cells.push_back(std::move(cell));
    }
    return cells;
}

inline nlohmann::json summarize(const CampaignResult& result) {
    nlohmann::json j;
    j["name"] = result.config.name;
    j["t_star"] = result.t_star;
    j["threshold_kind"] = to_string(result.config.threshold);
    j["mode"] = to_string(result.config.mode);
    j["cells"] = summarize(result.records);
    return j;
}

}  // namespace fgx
