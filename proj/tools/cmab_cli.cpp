// cmab: command-line front end for the CMAB-PTA simulation library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmab/core/errors.hpp"
#include "cmab/harness/experiment.hpp"
#include "cmab/harness/report.hpp"
#include "cmab/ingest/edge_list.hpp"
#include "cmab/ingest/movielens.hpp"
#include "cmab/ingest/serialize.hpp"
#include "cmab/testing/selftest.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIngest = 3;
constexpr int kExitSimulation = 4;

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cmab::IngestError("cannot write " + path.string());
    out << j.dump(1) << '\n';
    if (!out) throw cmab::IngestError("write failed: " + path.string());
}

int cmd_run(const std::string& config_path, std::size_t threads, const std::string& output_override) {
    auto configs = cmab::load_run_configs(config_path);
    for (auto& cfg : configs) {
        if (threads > 0) cfg.threads = threads;
        if (!output_override.empty()) {
            const auto sub = configs.size() > 1 ? std::filesystem::path(cfg.policy.name) : std::filesystem::path();
            cfg.output = std::filesystem::path(output_override) / sub;
        }
    }
    // build everything first so configuration errors surface before any simulation
    std::vector<cmab::Problem> problems;
    for (const auto& cfg : configs) problems.push_back(cmab::build_problem(cfg));
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto result = cmab::run_experiment(configs[i], problems[i]);
        cmab::emit_report(result, configs[i].output);
        std::printf("%-14s T=%lld runs=%zu final regret %s  -> %s\n", configs[i].policy.name.c_str(),
                    static_cast<long long>(configs[i].horizon), configs[i].runs,
                    cmab::format_mean_std(result.aggregate.mean.back(), result.aggregate.std.back()).c_str(),
                    configs[i].output.string().c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial bandits with probabilistically triggered arms: simulations and experiments"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run the experiment(s) described by a JSON config");
    std::string config_path, output_override;
    std::size_t threads = 0;
    run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    run->add_option("--threads", threads, "Concurrent runs (overrides the config)");
    run->add_option("--output", output_override, "Output directory (overrides the config)");

    auto* ml = app.add_subcommand("ingest-movielens", "Build a PMC instance from MovieLens-format files");
    std::string ratings, movies, ml_out, noise_kind = "variance";
    cmab::MovieLensOptions opt;
    ml->add_option("--ratings", ratings, "ratings.csv")->required()->check(CLI::ExistingFile);
    ml->add_option("--movies", movies, "movies.csv")->required()->check(CLI::ExistingFile);
    ml->add_option("--out", ml_out, "Output instance JSON")->required();
    ml->add_option("--window-start", opt.window_start, "First timestamp kept (inclusive)");
    ml->add_option("--window-end", opt.window_end, "Timestamp bound (exclusive)");
    ml->add_option("--most-rated", opt.most_rated);
    ml->add_option("--least-rated", opt.least_rated);
    ml->add_option("--random-movies", opt.random_movies);
    ml->add_option("--user-cap", opt.user_cap, "Subsample this many users (0 keeps all)");
    ml->add_option("--subset-size", opt.subset_size, "K");
    ml->add_option("--word-of-mouth", opt.word_of_mouth, "p*");
    ml->add_option("--attraction-scale", opt.attraction_scale);
    ml->add_option("--noise", opt.noise, "Preference noise parameter");
    ml->add_option("--noise-parameter", noise_kind, "How --noise is read")
        ->check(CLI::IsMember({"variance", "stddev"}));
    ml->add_option("--selection-seed", opt.selection_seed);
    ml->add_option("--noise-seed", opt.noise_seed);

    auto* ig = app.add_subcommand("ingest-graph", "Build an influence graph from an edge list");
    std::string edges_path, graph_out;
    bool undirected = false;
    std::size_t syn_nodes = 0, syn_edges = 0;
    std::uint64_t syn_seed = 1;
    ig->add_option("--input", edges_path, "Edge list file")->check(CLI::ExistingFile);
    ig->add_flag("--undirected", undirected, "Expand each line to both directions");
    ig->add_option("--synthetic-nodes", syn_nodes, "Generate a random graph instead of reading --input");
    ig->add_option("--synthetic-edges", syn_edges);
    ig->add_option("--seed", syn_seed, "Seed of the synthetic graph");
    ig->add_option("--out", graph_out, "Output graph JSON")->required();

    auto* rep = app.add_subcommand("report", "Summarize the results under a directory");
    std::string result_dir;
    rep->add_option("result-dir", result_dir)->required()->check(CLI::ExistingDirectory);

    auto* self = app.add_subcommand("selftest", "Cross-check oracles and closed forms against brute force");
    std::uint64_t self_seed = 7;
    self->add_option("--seed", self_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, threads, output_override);
        if (*ml) {
            opt.noise_parameter =
                noise_kind == "stddev" ? cmab::NoiseParameter::StdDev : cmab::NoiseParameter::Variance;
            const auto table = cmab::load_ratings_table(ratings, movies);
            const auto built = cmab::build_movielens_instance(table, opt);
            auto j = cmab::to_json(built.instance);
            j["movie_ids"] = built.movie_ids;
            j["user_ids"] = built.user_ids;
            j["fingerprint"] = cmab::fingerprint(built.instance);
            write_json(ml_out, j);
            std::printf("V=%zu W=%zu K=%zu fingerprint %s -> %s\n", built.instance.items, built.instance.users,
                        built.instance.subset_size, cmab::fingerprint(built.instance).c_str(), ml_out.c_str());
            return 0;
        }
        if (*ig) {
            cmab::EdgeListGraph g;
            if (syn_nodes > 0) {
                std::istringstream in(cmab::synthetic_edge_list(syn_nodes, syn_edges, syn_seed));
                g = cmab::load_edge_graph(in, false);
            } else if (!edges_path.empty()) {
                g = cmab::load_edge_graph(edges_path, undirected);
            } else {
                throw cmab::ConfigError("ingest-graph needs --input or --synthetic-nodes");
            }
            auto j = cmab::to_json(g.graph);
            j["original_ids"] = g.original_ids;
            j["fingerprint"] = cmab::fingerprint(g.graph);
            write_json(graph_out, j);
            std::printf("nodes=%zu edges=%zu self_loops_dropped=%zu duplicates_collapsed=%zu fingerprint %s -> %s\n",
                        g.graph.node_count(), g.graph.edge_count(), g.self_loops_dropped, g.duplicates_collapsed,
                        cmab::fingerprint(g.graph).c_str(), graph_out.c_str());
            return 0;
        }
        if (*rep) {
            std::cout << cmab::render_report(result_dir);
            return 0;
        }
        if (*self) {
            const int failures = cmab::run_selftest(std::cout, self_seed);
            std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
            return failures == 0 ? 0 : kExitSimulation;
        }
    } catch (const cmab::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const cmab::IngestError& e) {
        std::cerr << "ingestion error: " << e.what() << '\n';
        return kExitIngest;
    } catch (const cmab::SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return kExitSimulation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSimulation;
    }
    return 0;
}
