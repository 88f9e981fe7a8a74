#include "cmab/harness/problem.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cmab/core/errors.hpp"
#include "cmab/environments/influence.hpp"
#include "cmab/environments/pmc.hpp"
#include "cmab/environments/routing.hpp"
#include "cmab/ingest/edge_list.hpp"
#include "cmab/ingest/movielens.hpp"
#include "cmab/ingest/serialize.hpp"
#include "cmab/oracles/exact.hpp"
#include "cmab/oracles/rr_greedy.hpp"
#include "cmab/policies/cts.hpp"
#include "cmab/policies/ucb.hpp"

namespace cmab {

using nlohmann::json;

namespace {

constexpr std::uint64_t kInstanceStream = 0x1a5e;
constexpr std::uint64_t kBenchmarkStream = 0xbe4c;

void check_keys(const json& env, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : env.items()) {
        if (key != "family" && key != "instance_seed" && !allowed.count(key)) {
            throw ConfigError("environment '" + env.at("family").get<std::string>() + "': unknown field '" + key + "'");
        }
    }
}

template <typename T>
T get(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("environment: missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("environment field '") + key + "': " + e.what());
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? get<T>(j, key) : fallback;
}

std::filesystem::path resolve(const RunConfig& cfg, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() ? cfg.base_dir / path : path;
}

std::string fingerprint_values(const std::string& header, std::span<const double> values) {
    std::string text = header + '\n';
    char buf[32];
    for (double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        text += buf;
    }
    return hex64(fnv1a64(text));
}

/// Enumerates every K-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void expect_oracle(const std::string& kind, std::initializer_list<const char*> allowed, const std::string& family) {
    for (const char* a : allowed) {
        if (kind == a) return;
    }
    throw ConfigError("oracle '" + kind + "' does not apply to environment family '" + family + "'");
}

void build_cascade(const RunConfig& cfg, Problem& pb, Rng& instance_rng) {
    const json& e = cfg.environment;
    CascadingInstance inst;
    if (pb.family == "blb") {
        check_keys(e, {"items", "list_length", "p", "gap"});
        try {
            inst = make_blb_instance(get<std::size_t>(e, "items"), get<std::size_t>(e, "list_length"),
                                     get<double>(e, "p"), get<double>(e, "gap"));
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("blb: ") + ex.what());
        }
    } else {
        check_keys(e, {"items", "users", "list_length", "form", "attraction"});
        inst.items = get<std::size_t>(e, "items");
        inst.users = get_or<std::size_t>(e, "users", 1);
        inst.list_length = get<std::size_t>(e, "list_length");
        inst.form = cascade_form_from_string(get_or<std::string>(e, "form", "disjunctive"));
        if (!e.contains("attraction")) throw ConfigError("cascade: missing field 'attraction'");
        const json& a = e.at("attraction");
        if (a.is_string() && a.get<std::string>() == "uniform") {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            inst.attraction.resize(inst.items * inst.users);
            for (double& p : inst.attraction) p = u(instance_rng);
        } else if (a.is_array()) {
            inst.attraction = get<std::vector<double>>(e, "attraction");
        } else {
            throw ConfigError("cascade: 'attraction' must be \"uniform\" or an array of V*W probabilities");
        }
    }
    std::shared_ptr<CascadeEnvironment> env;
    try {
        env = std::make_shared<CascadeEnvironment>(inst);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("cascade: ") + ex.what());
    }
    if (pb.oracle_kind == "auto") pb.oracle_kind = "topk";
    expect_oracle(pb.oracle_kind, {"topk"}, pb.family);
    pb.make_oracle = [inst] { return std::make_unique<TopKOracle>(inst.items, inst.users, inst.list_length); };
    pb.optimum = topk_oracle(env->means().values(), inst.items, inst.users, inst.list_length);
    pb.instance_fingerprint =
        fingerprint_values("cascade " + std::to_string(inst.items) + ' ' + std::to_string(inst.users) + ' ' +
                               std::to_string(inst.list_length) + ' ' + std::string(to_string(inst.form)),
                           inst.attraction);
    pb.env = env;
}

void build_pmc(const RunConfig& cfg, Problem& pb) {
    const json& e = cfg.environment;
    check_keys(e, {"instance", "movielens", "items", "users", "subset_size", "word_of_mouth", "attraction"});
    PmcInstance inst;
    if (e.contains("instance")) {
        const auto path = resolve(cfg, get<std::string>(e, "instance"));
        std::ifstream in(path);
        if (!in) throw IngestError("cannot open PMC instance " + path.string());
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& ex) {
            throw IngestError(path.string() + ": " + ex.what());
        }
        inst = pmc_from_json(j);
    } else if (e.contains("movielens")) {
        const json& m = e.at("movielens");
        MovieLensOptions opt;
        opt.window_start = get_or(m, "window_start", opt.window_start);
        opt.window_end = get_or(m, "window_end", opt.window_end);
        opt.most_rated = get_or(m, "most_rated", opt.most_rated);
        opt.least_rated = get_or(m, "least_rated", opt.least_rated);
        opt.random_movies = get_or(m, "random_movies", opt.random_movies);
        opt.user_cap = get_or(m, "user_cap", opt.user_cap);
        opt.attraction_scale = get_or(m, "attraction_scale", opt.attraction_scale);
        opt.noise = get_or(m, "noise", opt.noise);
        const auto noise_kind = get_or<std::string>(m, "noise_parameter", "variance");
        if (noise_kind == "variance") {
            opt.noise_parameter = NoiseParameter::Variance;
        } else if (noise_kind == "stddev") {
            opt.noise_parameter = NoiseParameter::StdDev;
        } else {
            throw ConfigError("movielens: noise_parameter must be 'variance' or 'stddev'");
        }
        opt.selection_seed = get_or(m, "selection_seed", opt.selection_seed);
        opt.noise_seed = get_or(m, "noise_seed", opt.noise_seed);
        const auto table = load_ratings_table(resolve(cfg, get<std::string>(m, "ratings")),
                                              resolve(cfg, get<std::string>(m, "movies")));
        inst = build_movielens_instance(table, opt).instance;
    } else {
        inst.items = get<std::size_t>(e, "items");
        inst.users = get<std::size_t>(e, "users");
        inst.attraction = get<std::vector<double>>(e, "attraction");
    }
    inst.subset_size = get_or(e, "subset_size", inst.subset_size == 0 ? std::size_t{3} : inst.subset_size);
    inst.word_of_mouth = get_or(e, "word_of_mouth", inst.word_of_mouth);

    std::shared_ptr<PmcEnvironment> env;
    try {
        env = std::make_shared<PmcEnvironment>(inst);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("pmc: ") + ex.what());
    }
    if (pb.oracle_kind == "auto") pb.oracle_kind = "exhaustive_subset";
    expect_oracle(pb.oracle_kind, {"exhaustive_subset"}, pb.family);
    const auto limit = cfg.oracle.subset_limit;
    auto reference = std::make_shared<ExhaustiveSubsetOracle>(inst, limit);  // ConfigError when too large
    pb.make_oracle = [inst, limit] { return std::make_unique<ExhaustiveSubsetOracle>(inst, limit); };
    pb.optimum = reference->best(env->means().values());
    pb.instance_fingerprint = fingerprint(inst);
    pb.env = env;
}

InfluenceGraph load_influence_graph(const RunConfig& cfg) {
    const json& e = cfg.environment;
    if (e.contains("graph")) {
        const auto path = resolve(cfg, get<std::string>(e, "graph"));
        std::ifstream in(path);
        if (!in) throw IngestError("cannot open graph " + path.string());
        try {
            return graph_from_json(json::parse(in));
        } catch (const json::parse_error& ex) {
            throw IngestError(path.string() + ": " + ex.what());
        }
    }
    if (e.contains("edge_list")) {
        return load_edge_graph(resolve(cfg, get<std::string>(e, "edge_list")), get_or(e, "undirected", false))
            .graph;
    }
    if (e.contains("synthetic")) {
        const json& s = e.at("synthetic");
        std::string text;
        try {
            text = synthetic_edge_list(get<std::size_t>(s, "nodes"), get<std::size_t>(s, "edges"),
                                       get_or<std::uint64_t>(s, "seed", 1));
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("synthetic graph: ") + ex.what());
        }
        std::istringstream in(text);
        return load_edge_graph(in, false).graph;
    }
    if (e.contains("edges")) {
        std::vector<InfluenceEdge> edges;
        for (const auto& x : e.at("edges")) {
            if (!x.is_array() || x.size() != 3) throw ConfigError("influence: edges are [src, dst, p] triples");
            edges.push_back({x.at(0).get<std::size_t>(), x.at(1).get<std::size_t>(), x.at(2).get<double>()});
        }
        try {
            return InfluenceGraph(get<std::size_t>(e, "nodes"), std::move(edges));
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("influence: ") + ex.what());
        }
    }
    throw ConfigError("influence: give one of 'graph', 'edge_list', 'synthetic' or 'nodes'+'edges'");
}

void build_influence(const RunConfig& cfg, Problem& pb) {
    const json& e = cfg.environment;
    check_keys(e, {"graph", "edge_list", "undirected", "synthetic", "nodes", "edges", "seed_count"});
    InfluenceGraph graph = load_influence_graph(cfg);
    const auto k = get<std::size_t>(e, "seed_count");
    std::shared_ptr<InfluenceEnvironment> env;
    try {
        env = std::make_shared<InfluenceEnvironment>(graph, k);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("influence: ") + ex.what());
    }
    if (pb.oracle_kind == "auto") pb.oracle_kind = "rr_greedy";
    expect_oracle(pb.oracle_kind, {"rr_greedy"}, pb.family);
    const RrGreedyParams params = cfg.oracle.rr;
    try {
        RrGreedyOracle probe(graph, k, params);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("rr_greedy: ") + ex.what());
    }
    pb.make_oracle = [graph, k, params] { return std::make_unique<RrGreedyOracle>(graph, k, params); };
    pb.instance_fingerprint = fingerprint(graph);

    if (cfg.regret_mode == RegretMode::Expected) {
        if (!env->has_closed_form_reward()) {
            throw ConfigError("influence: expected regret needs an exact spread; graph has " +
                              std::to_string(graph.edge_count()) + " edges (limit " +
                              std::to_string(InfluenceEnvironment::kExactEdgeLimit) +
                              "); use regret_mode \"realized_approx\"");
        }
        if (binomial(graph.node_count(), k) > cfg.oracle.subset_limit) {
            throw ConfigError("influence: too many seed sets to find the exact optimum");
        }
        const auto mu = env->means().values();
        double best = -1.0;
        SeedSet best_set;
        for_each_subset(graph.node_count(), k, [&](const std::vector<std::size_t>& idx) {
            SeedSet s{idx};
            const double r = env->reward(s, mu);
            if (r > best) {
                best = r;
                best_set = s;
            }
        });
        pb.optimum = best_set;
    } else {
        Rng rng(derive_seed(cfg.master_seed, kBenchmarkStream));
        RrGreedyParams bench_params = params;
        bench_params.rr_budget = cfg.benchmark_rr_budget;
        RrGreedyOracle oracle(graph, k, bench_params);
        const auto probs = graph.probabilities();
        const auto res = oracle.run(probs, rng);
        ApproxBenchmark b;
        b.seeds = res.seeds;
        b.spread = im_spread(graph, b.seeds, cfg.benchmark_mc, rng);
        b.alpha = rr_alpha(params.epsilon);
        b.beta = rr_beta(graph.node_count(), params.ell);
        b.budget_exhausted = res.budget_exhausted;
        pb.opt_value = b.alpha * b.beta * b.spread;
        pb.benchmark = b;
    }
    pb.env = env;
}

void build_routing(const RunConfig& cfg, Problem& pb) {
    const json& e = cfg.environment;
    check_keys(e, {"nodes", "links", "source", "destination"});
    RoutingInstance inst;
    inst.nodes = get<std::size_t>(e, "nodes");
    inst.source = get<std::size_t>(e, "source");
    inst.destination = get<std::size_t>(e, "destination");
    if (!e.contains("links") || !e.at("links").is_array()) throw ConfigError("routing: missing 'links' array");
    for (const auto& x : e.at("links")) {
        if (!x.is_array() || x.size() != 3) throw ConfigError("routing: links are [src, dst, p] triples");
        inst.links.push_back({x.at(0).get<std::size_t>(), x.at(1).get<std::size_t>(), x.at(2).get<double>()});
    }
    std::shared_ptr<RoutingEnvironment> env;
    try {
        env = std::make_shared<RoutingEnvironment>(inst);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("routing: ") + ex.what());
    }
    if (pb.oracle_kind == "auto") pb.oracle_kind = "reliable_path";
    expect_oracle(pb.oracle_kind, {"reliable_path"}, pb.family);
    pb.make_oracle = [inst] { return std::make_unique<ReliablePathOracle>(inst); };
    pb.optimum = ReliablePathOracle(inst).best(env->means().values());
    std::string header = "routing " + std::to_string(inst.nodes) + ' ' + std::to_string(inst.source) + ' ' +
                         std::to_string(inst.destination);
    for (const auto& l : inst.links) header += ' ' + std::to_string(l.src) + '>' + std::to_string(l.dst);
    pb.instance_fingerprint = fingerprint_values(header, env->means().values());
    pb.env = env;
}

}  // namespace

CascadingInstance make_blb_instance(std::size_t items, std::size_t k, double p, double gap) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("B_LB: p must be in (0, 1)");
    if (!(gap > 0.0 && gap < p)) throw std::invalid_argument("B_LB: gap must be in (0, p)");
    if (k < 1 || k > items) throw std::invalid_argument("B_LB: need 1 <= K <= V");
    CascadingInstance inst;
    inst.items = items;
    inst.users = 1;
    inst.list_length = k;
    inst.form = CascadeForm::Disjunctive;
    inst.attraction.assign(items, p - gap);
    for (std::size_t i = 0; i < k; ++i) inst.attraction[i] = p;
    return inst;
}

Problem build_problem(const RunConfig& cfg) {
    Problem pb;
    pb.family = get<std::string>(cfg.environment, "family");
    pb.oracle_kind = cfg.oracle.kind;
    pb.instance_seed = get_or<std::uint64_t>(cfg.environment, "instance_seed",
                                             derive_seed(cfg.master_seed, kInstanceStream));
    Rng instance_rng(pb.instance_seed);

    if (cfg.regret_mode == RegretMode::RealizedApprox && pb.family != "influence") {
        throw ConfigError("regret_mode realized_approx applies only to the influence family");
    }
    if (pb.family == "blb" || pb.family == "cascade") {
        build_cascade(cfg, pb, instance_rng);
    } else if (pb.family == "pmc") {
        build_pmc(cfg, pb);
    } else if (pb.family == "influence") {
        build_influence(cfg, pb);
    } else if (pb.family == "routing") {
        build_routing(cfg, pb);
    } else {
        throw ConfigError("unknown environment family '" + pb.family + "'");
    }
    if (pb.optimum) pb.opt_value = pb.env->reward(*pb.optimum, pb.env->means().values());
    if (cfg.policy.name == "oracle_replay" && pb.oracle_kind == "rr_greedy") {
        throw ConfigError("oracle_replay needs an exact oracle");
    }
    return pb;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const Environment& env) {
    const std::size_t m = env.arm_count();
    if (spec.name == "cts") return std::make_unique<CtsPolicy>(m, spec.prior_a, spec.prior_b);
    if (spec.name == "cucb") {
        return std::make_unique<UcbPolicy>("cucb", m, IndexRule::Cucb, spec.ucb_constant, false, spec.ucb_ties);
    }
    if (spec.name == "cascade_ucb1") {
        return std::make_unique<UcbPolicy>("cascade_ucb1", m, IndexRule::Cucb, spec.ucb_constant, true, spec.ucb_ties);
    }
    if (spec.name == "cascade_klucb") {
        return std::make_unique<UcbPolicy>("cascade_klucb", m, IndexRule::KlUcb, spec.ucb_constant, false,
                                           spec.ucb_ties);
    }
    if (spec.name == "ts_cascade") return std::make_unique<TsCascadePolicy>(m, spec.ts_width);
    if (spec.name == "oracle_replay") return std::make_unique<OracleReplayPolicy>(env.means());
    throw ConfigError("unknown policy '" + spec.name + "'");
}

}  // namespace cmab
