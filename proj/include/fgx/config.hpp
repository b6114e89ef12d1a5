#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgx/common.hpp"
#include "fgx/divergence.hpp"
#include "fgx/graph_gen.hpp"
#include "fgx/runners.hpp"
#include "fgx/stopping.hpp"
#include "fgx/tracking.hpp"

namespace fgx {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MeanRule { explicit_list, linear, best_one };

// One campaign cell family: a graph, a reward model, and the run grid.
// Parsed from flat "key = value" text with one [campaign] section per
// campaign.
struct ExperimentConfig {
    std::string name = "campaign";
    GraphFamily family = GraphFamily::bandit;
    bool graph_from_file = false;
    std::string graph_file;
    int k = 2;
    FamilyParams params;
    RewardKind reward = RewardKind::gaussian;
    double variance = 1.0;
    MeanRule mean_rule = MeanRule::linear;
    std::vector<double> mean_values;
    int best_vertex = -1;  // 0-based; -1 = family default
    FeedbackMode mode = FeedbackMode::uninformed;
    std::vector<AlgorithmId> algorithms;
    std::vector<double> deltas;
    std::uint64_t seed_lo = 0;
    std::uint64_t seed_hi = 0;
    ThresholdKind threshold = ThresholdKind::practical;
    long iteration_cap = 10'000'000;
    TrackingConfig tracking{};

    FeedbackGraph build_graph() const {
        if (graph_from_file) {
            std::ifstream in(graph_file);
            if (!in) throw ConfigError("cannot open graph file: " + graph_file);
            return graph_from_text(in);
        }
        return generate_graph(family, k, params);
    }

    std::vector<double> build_means(int graph_k) const {
        switch (mean_rule) {
            case MeanRule::explicit_list:
                if (static_cast<int>(mean_values.size()) != graph_k)
                    throw ConfigError("mean_values must list one mean per vertex");
                return mean_values;
            case MeanRule::linear: {
                if (graph_k < 2) throw ConfigError("linear means need k >= 2");
                std::vector<double> mu(graph_k);
                for (int u = 0; u < graph_k; ++u)
                    mu[u] = static_cast<double>(u) / (graph_k - 1);
                return mu;
            }
            case MeanRule::best_one: {
                int b = best_vertex >= 0 ? best_vertex : default_best_vertex(family, graph_k);
                if (b < 0 || b >= graph_k) throw ConfigError("best_vertex out of range");
                std::vector<double> mu(graph_k, 0.5);
                mu[b] = 1.0;
                return mu;
            }
        }
        throw ConfigError("unknown mean rule");
    }

    Instance build_instance() const {
        FeedbackGraph g = build_graph();
        const int gk = g.size();
        RewardFamily fam = reward == RewardKind::gaussian ? RewardFamily::gaussian(variance)
                                                          : RewardFamily::bernoulli();
        std::vector<double> mu = build_means(gk);
        if (reward == RewardKind::bernoulli) {
            if (mean_rule == MeanRule::linear)
                throw ConfigError("linear means hit the Bernoulli endpoints; use explicit means");
            if (mean_rule == MeanRule::best_one)
                throw ConfigError("best-1-rest-0.5 means hit the Bernoulli endpoint 1; use explicit means");
        }
        if (reward == RewardKind::bernoulli && mode == FeedbackMode::uninformed)
            throw ConfigError("Bernoulli rewards are unidentifiable in the uninformed mode");
        Instance inst(std::move(g), fam, std::move(mu));
        if (!classify_observability(inst.graph()).observable())
            throw ConfigError("configured graph is not observable");
        return inst;
    }

    RunConfig run_config() const {
        RunConfig rc;
        rc.mode = mode;
        rc.stopping.kind = threshold;
        rc.iteration_cap = iteration_cap;
        rc.tracking = tracking;
        return rc;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Accepts plain literals plus the convenience form exp(x) for confidence
// levels like exp(-7).
inline double parse_double(const std::string& tok, int line) {
    std::string t = trim(tok);
    bool exp_form = false;
    std::string body = t;
    if (t.size() > 5 && t.compare(0, 4, "exp(") == 0 && t.back() == ')') {
        exp_form = true;
        body = t.substr(4, t.size() - 5);
    }
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(body, &used);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": bad number '" + t + "'");
    }
    if (used != body.size())
        throw ConfigError("line " + std::to_string(line) + ": bad number '" + t + "'");
    return exp_form ? std::exp(v) : v;
}

inline long parse_long(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        long v = std::stol(trim(tok), &used);
        if (used != trim(tok).size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": bad integer '" + tok + "'");
    }
}

inline void apply_key(ExperimentConfig& c, const std::string& key, const std::string& value,
                      int line) {
    auto fail = [&](const std::string& msg) {
        throw ConfigError("line " + std::to_string(line) + ": " + msg);
    };
    if (key == "name") {
        c.name = value;
    } else if (key == "graph") {
        if (value == "file") {
            c.graph_from_file = true;
        } else if (auto f = graph_family_from_string(value)) {
            c.family = *f;
            c.graph_from_file = false;
        } else {
            fail("unknown graph family '" + value + "'");
        }
    } else if (key == "graph_file") {
        c.graph_file = value;
    } else if (key == "k") {
        c.k = static_cast<int>(parse_long(value, line));
    } else if (key == "p") {
        c.params.p = parse_double(value, line);
    } else if (key == "q") {
        c.params.q = parse_double(value, line);
    } else if (key == "r") {
        c.params.r = parse_double(value, line);
    } else if (key == "reward") {
        if (value == "gaussian") c.reward = RewardKind::gaussian;
        else if (value == "bernoulli") c.reward = RewardKind::bernoulli;
        else fail("unknown reward family '" + value + "'");
    } else if (key == "variance") {
        c.variance = parse_double(value, line);
    } else if (key == "means") {
        if (value == "explicit") c.mean_rule = MeanRule::explicit_list;
        else if (value == "linear") c.mean_rule = MeanRule::linear;
        else if (value == "best-1-rest-0.5") c.mean_rule = MeanRule::best_one;
        else fail("unknown mean rule '" + value + "'");
    } else if (key == "mean_values") {
        c.mean_values.clear();
        for (const std::string& tok : split_list(value))
            c.mean_values.push_back(parse_double(tok, line));
    } else if (key == "best_vertex") {
        c.best_vertex = static_cast<int>(parse_long(value, line)) - 1;  // 1-based in configs
    } else if (key == "mode") {
        if (value == "informed") c.mode = FeedbackMode::informed;
        else if (value == "uninformed") c.mode = FeedbackMode::uninformed;
        else fail("unknown mode '" + value + "'");
    } else if (key == "algorithms") {
        c.algorithms.clear();
        for (const std::string& tok : split_list(value)) {
            auto a = algorithm_from_string(tok);
            if (!a) fail("unknown algorithm '" + tok + "'");
            c.algorithms.push_back(*a);
        }
    } else if (key == "deltas") {
        c.deltas.clear();
        for (const std::string& tok : split_list(value)) {
            const double d = parse_double(tok, line);
            if (!(d > 0.0 && d < 1.0)) fail("delta must lie in (0, 1)");
            c.deltas.push_back(d);
        }
    } else if (key == "seeds") {
        const std::size_t dots = value.find("..");
        if (dots == std::string::npos) fail("seeds must be a range like 0..99");
        c.seed_lo = static_cast<std::uint64_t>(parse_long(value.substr(0, dots), line));
        c.seed_hi = static_cast<std::uint64_t>(parse_long(value.substr(dots + 2), line));
        if (c.seed_hi < c.seed_lo) fail("empty seed range");
    } else if (key == "threshold") {
        if (value == "practical") c.threshold = ThresholdKind::practical;
        else if (value == "theoretical") c.threshold = ThresholdKind::theoretical;
        else fail("unknown threshold kind '" + value + "'");
    } else if (key == "iteration_cap") {
        c.iteration_cap = parse_long(value, line);
        if (c.iteration_cap < 1) fail("iteration_cap must be >= 1");
    } else if (key == "smoothing") {
        if (value == "average") c.tracking.kind = SmoothingKind::average;
        else if (value == "exponential") c.tracking.kind = SmoothingKind::exponential;
        else fail("unknown smoothing kind '" + value + "'");
    } else if (key == "smoothing_lambda") {
        c.tracking.lambda = parse_double(value, line);
    } else {
        fail("unknown key '" + key + "'");
    }
}

}  // namespace detail

inline std::vector<ExperimentConfig> parse_config_text(const std::string& text) {
    std::vector<ExperimentConfig> out;
    ExperimentConfig defaults;
    bool in_section = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    int section_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line != "[campaign]")
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section " + line);
            ++section_no;
            out.push_back(defaults);
            out.back().name = "campaign" + std::to_string(section_no);
            in_section = true;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        detail::apply_key(in_section ? out.back() : defaults, key, value, line_no);
    }
    if (out.empty()) throw ConfigError("config has no [campaign] section");
    return out;
}

inline std::vector<ExperimentConfig> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace fgx
