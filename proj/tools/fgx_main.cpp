// Command-line harness: instance diagnostics, characteristic-time solving,
// and seeded experiment campaigns with CSV/JSON output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fgx/campaign.hpp"
#include "fgx/config.hpp"
#include "fgx/graph.hpp"
#include "fgx/graph_gen.hpp"
#include "fgx/solver.hpp"

namespace {

using nlohmann::json;

std::vector<int> one_based(const std::vector<int>& vs) {
    std::vector<int> out;
    out.reserve(vs.size());
    for (int v : vs) out.push_back(v + 1);
    return out;
}

int resolve_workers(int cli_workers) {
    if (cli_workers > 0) return cli_workers;
    if (const char* env = std::getenv("FG_EXPLORE_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 0;  // campaign picks hardware concurrency
}

const fgx::ExperimentConfig& select_campaign(const std::vector<fgx::ExperimentConfig>& cfgs,
                                             const std::string& name) {
    if (name.empty()) return cfgs.front();
    for (const auto& c : cfgs)
        if (c.name == name) return c;
    throw fgx::ConfigError("no campaign named '" + name + "' in config");
}

json graph_info_json(const fgx::ExperimentConfig& cfg) {
    const fgx::FeedbackGraph g = cfg.build_graph();
    const fgx::ObservabilityReport rep = fgx::classify_observability(g);
    const fgx::GraphQuantities q = fgx::graph_quantities(g);
    json j;
    j["k"] = g.size();
    j["graph_class"] = fgx::to_string(rep.graph_class);
    json classes = json::array();
    for (int v = 0; v < g.size(); ++v) classes.push_back(fgx::to_string(rep.vertex_class[v]));
    j["vertex_classes"] = classes;
    j["strongly_observable"] = one_based(rep.strongly);
    j["weakly_observable"] = one_based(rep.weakly);
    j["self_loops"] = one_based(rep.self_loops);
    j["alpha"] = q.alpha;
    j["delta"] = q.delta;
    j["sigma"] = q.sigma;
    j["independent_set"] = one_based(q.independent_set);
    j["dominating_set"] = one_based(q.dominating_set);
    j["matrix_text"] = fgx::graph_to_text(g);
    return j;
}

json charac_time_json(const fgx::ExperimentConfig& cfg) {
    const fgx::Instance inst = cfg.build_instance();
    fgx::SolverConfig scfg;
    scfg.mode = cfg.mode;
    const fgx::SolverResult res = fgx::solve_characteristic_time(inst, scfg);
    json j;
    j["t_star"] = res.t_star;
    j["omega_star"] = res.omega_star.values();
    j["per_alt_values"] = res.per_alt_values;
    j["iterations"] = res.iterations;
    j["gap_estimate"] = res.gap_estimate;
    j["best_vertex"] = inst.best_vertex() + 1;
    return j;
}

int run_campaigns(const std::vector<fgx::ExperimentConfig>& cfgs, const std::string& out_dir,
                  int workers, const std::string& format) {
    std::filesystem::create_directories(out_dir);
    for (const auto& cfg : cfgs) {
        const fgx::CampaignResult result = fgx::run_campaign(cfg, workers);
        const std::filesystem::path base = std::filesystem::path(out_dir) / cfg.name;
        if (format == "json") {
            json rows = json::array();
            for (const auto& r : result.records) {
                rows.push_back({{"seed", r.seed},
                                {"algorithm", r.algorithm},
                                {"delta", r.delta},
                                {"tau", r.tau},
                                {"correct", r.correct},
                                {"a_hat", r.a_hat + 1},
                                {"t_star", r.t_star},
                                {"normalized", r.normalized},
                                {"threshold_kind", fgx::to_string(r.threshold_kind)},
                                {"truncated", r.truncated}});
            }
            std::ofstream of(base.string() + ".json");
            of << rows.dump(2) << "\n";
        } else {
            std::ofstream of(base.string() + ".csv");
            fgx::write_csv(of, result.records);
        }
        std::ofstream sf(base.string() + "_summary.json");
        sf << fgx::summarize(result).dump(2) << "\n";
        std::cout << cfg.name << ": " << result.records.size() << " runs, t_star "
                  << result.t_star << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best-arm identification with stochastic feedback graphs"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", format = "csv", campaign_name, csv_path;
    int workers = 0;

    CLI::App* info = app.add_subcommand("graph-info", "print graph quantities as JSON");
    info->add_option("--config", config_path, "config file")->required();
    info->add_option("--campaign", campaign_name, "campaign name (default: first)");

    CLI::App* charac = app.add_subcommand("charac-time", "solve the characteristic time");
    charac->add_option("--config", config_path, "config file")->required();
    charac->add_option("--campaign", campaign_name, "campaign name (default: first)");

    CLI::App* run = app.add_subcommand("run", "execute all campaigns in a config");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--workers", workers, "worker threads (or FG_EXPLORE_WORKERS)");
    run->add_option("--format", format, "records format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* summ = app.add_subcommand("summarize", "re-aggregate an existing run CSV");
    summ->add_option("csv", csv_path, "run CSV produced by 'run'")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (summ->parsed()) {
            std::ifstream in(csv_path);
            if (!in) throw fgx::ConfigError("cannot open CSV file: " + csv_path);
            std::cout << fgx::summarize(fgx::read_csv(in)).dump(2) << "\n";
            return 0;
        }
        const std::vector<fgx::ExperimentConfig> cfgs = fgx::parse_config_file(config_path);
        if (info->parsed()) {
            std::cout << graph_info_json(select_campaign(cfgs, campaign_name)).dump(2) << "\n";
        } else if (charac->parsed()) {
            std::cout << charac_time_json(select_campaign(cfgs, campaign_name)).dump(2) << "\n";
        } else if (run->parsed()) {
            return run_campaigns(cfgs, out_dir, resolve_workers(workers), format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
