#include "cmab/harness/config.hpp"

#include <fstream>
#include <set>

#include "cmab/core/errors.hpp"
#include "cmab/ingest/serialize.hpp"

namespace cmab {

using nlohmann::json;

namespace {

const std::set<std::string> kPolicies = {"cts", "cucb", "cascade_ucb1", "cascade_klucb", "ts_cascade",
                                         "oracle_replay"};
const std::set<std::string> kOracles = {"auto", "topk", "exhaustive_subset", "reliable_path", "rr_greedy"};
const std::set<std::string> kTopLevel = {"environment", "policy",  "policies",      "oracle",
                                         "horizon",     "runs",    "master_seed",   "regret_mode",
                                         "benchmark_mc", "benchmark_rr_budget", "threads", "store_runs",
                                         "output"};

template <typename T>
T field(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

PolicySpec parse_policy(const json& j) {
    PolicySpec p;
    if (j.is_string()) {
        p.name = j.get<std::string>();
    } else if (j.is_object()) {
        p.name = field<std::string>(j, "name", p.name);
        p.ucb_constant = field<double>(j, "ucb_constant", p.ucb_constant);
        p.ts_width = ts_width_from_string(field<std::string>(j, "ts_width", std::string(to_string(p.ts_width))));
        p.ucb_ties = tie_order_from_string(field<std::string>(j, "ucb_ties", std::string(to_string(p.ucb_ties))));
        p.prior_a = field<double>(j, "prior_a", p.prior_a);
        p.prior_b = field<double>(j, "prior_b", p.prior_b);
    } else {
        throw ConfigError("policy must be a name or an object");
    }
    if (!kPolicies.count(p.name)) throw ConfigError("unknown policy '" + p.name + "'");
    if (!(p.ucb_constant > 0.0)) throw ConfigError("ucb_constant must be > 0");
    if (!(p.prior_a > 0.0 && p.prior_b > 0.0)) throw ConfigError("Beta prior counts must be > 0");
    return p;
}

OracleSpec parse_oracle(const json& j) {
    OracleSpec o;
    if (j.is_null()) return o;
    if (j.is_string()) {
        o.kind = j.get<std::string>();
    } else {
        o.kind = field<std::string>(j, "kind", o.kind);
        o.rr.epsilon = field<double>(j, "epsilon", o.rr.epsilon);
        o.rr.ell = field<double>(j, "ell", o.rr.ell);
        o.rr.rr_budget = field<std::uint64_t>(j, "rr_budget", o.rr.rr_budget);
        o.rr.kpt_constant = field<double>(j, "kpt_constant", o.rr.kpt_constant);
        o.rr.refine_constant = field<double>(j, "refine_constant", o.rr.refine_constant);
        o.subset_limit = field<std::uint64_t>(j, "subset_limit", o.subset_limit);
    }
    if (!kOracles.count(o.kind)) throw ConfigError("unknown oracle '" + o.kind + "'");
    if (!(o.rr.epsilon > 0.0 && o.rr.epsilon < 1.0)) throw ConfigError("epsilon must be in (0, 1)");
    if (!(o.rr.ell >= 1.0)) throw ConfigError("ell must be >= 1");
    if (o.rr.rr_budget == 0) throw ConfigError("rr_budget must be >= 1");
    return o;
}

}  // namespace

json RunConfig::to_json() const {
    return {{"environment", environment},
            {"policy",
             {{"name", policy.name},
              {"ucb_constant", policy.ucb_constant},
              {"ts_width", std::string(cmab::to_string(policy.ts_width))},
              {"ucb_ties", std::string(cmab::to_string(policy.ucb_ties))},
              {"prior_a", policy.prior_a},
              {"prior_b", policy.prior_b}}},
            {"oracle",
             {{"kind", oracle.kind},
              {"epsilon", oracle.rr.epsilon},
              {"ell", oracle.rr.ell},
              {"rr_budget", oracle.rr.rr_budget},
              {"kpt_constant", oracle.rr.kpt_constant},
              {"refine_constant", oracle.rr.refine_constant},
              {"subset_limit", oracle.subset_limit}}},
            {"horizon", horizon},
            {"runs", runs},
            {"master_seed", master_seed},
            {"regret_mode", std::string(cmab::to_string(regret_mode))},
            {"benchmark_mc", benchmark_mc},
            {"benchmark_rr_budget", benchmark_rr_budget},
            {"threads", threads},
            {"store_runs", store_runs},
            {"output", output.generic_string()}};
}

std::string RunConfig::fingerprint() const {
    json j = to_json();
    j.erase("output");
    j.erase("threads");
    return hex64(fnv1a64(j.dump()));
}

std::vector<RunConfig> parse_run_configs(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kTopLevel.count(key)) throw ConfigError("unknown config field '" + key + "'");
    }
    RunConfig base;
    base.base_dir = base_dir;
    if (!j.contains("environment") || !j.at("environment").is_object()) {
        throw ConfigError("config needs an 'environment' object");
    }
    base.environment = j.at("environment");
    if (!base.environment.contains("family")) throw ConfigError("environment needs a 'family'");
    base.oracle = parse_oracle(j.contains("oracle") ? j.at("oracle") : json());
    base.horizon = field<std::int64_t>(j, "horizon", base.horizon);
    base.runs = field<std::size_t>(j, "runs", base.runs);
    base.master_seed = field<std::uint64_t>(j, "master_seed", base.master_seed);
    base.regret_mode = regret_mode_from_string(field<std::string>(j, "regret_mode", "expected"));
    base.benchmark_mc = field<std::size_t>(j, "benchmark_mc", base.benchmark_mc);
    base.benchmark_rr_budget = field<std::uint64_t>(j, "benchmark_rr_budget", base.benchmark_rr_budget);
    base.threads = field<std::size_t>(j, "threads", base.threads);
    base.store_runs = field<bool>(j, "store_runs", base.store_runs);
    base.output = field<std::string>(j, "output", "results");
    if (base.output.is_relative()) base.output = base_dir / base.output;

    if (base.horizon < 1) throw ConfigError("horizon must be >= 1");
    if (base.runs < 1) throw ConfigError("runs must be >= 1");
    if (base.benchmark_mc < 1) throw ConfigError("benchmark_mc must be >= 1");
    if (base.threads < 1) throw ConfigError("threads must be >= 1");

    std::vector<RunConfig> out;
    if (j.contains("policies")) {
        if (j.contains("policy")) throw ConfigError("give either 'policy' or 'policies', not both");
        if (!j.at("policies").is_array() || j.at("policies").empty()) {
            throw ConfigError("'policies' must be a non-empty array");
        }
        for (const auto& p : j.at("policies")) {
            RunConfig cfg = base;
            cfg.policy = parse_policy(p);
            cfg.output = base.output / cfg.policy.name;
            out.push_back(std::move(cfg));
        }
    } else {
        base.policy = parse_policy(j.contains("policy") ? j.at("policy") : json("cts"));
        out.push_back(std::move(base));
    }
    return out;
}

std::vector<RunConfig> load_run_configs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    return parse_run_configs(j, path.parent_path());
}

}  // namespace cmab
