#include "cmab/harness/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmab {

using nlohmann::json;

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

class OutFile {
public:
    explicit OutFile(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
    }
    std::ofstream& stream() { return out_; }
    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("write failed: " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace

std::string format_mean_std(double mean, double std) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f ± %.1f", mean, std);
    return buf;
}

json summary_json(const RunResult& result) {
    const auto& agg = result.aggregate;
    const double mean = agg.mean.back();
    const double std = agg.std.back();
    json seeds = json::array();
    json finals = json::array();
    std::uint64_t warnings = 0;
    for (const auto& r : result.runs) {
        seeds.push_back(r.seed);
        finals.push_back(r.final_regret);
        warnings += r.budget_warnings;
    }
    json j = {{"policy", result.config.policy.name},
              {"family", result.config.environment.at("family")},
              {"oracle", result.oracle_kind},
              {"regret_mode", std::string(to_string(result.config.regret_mode))},
              {"horizon", result.config.horizon},
              {"runs", agg.runs},
              {"final_mean_cum_regret", mean},
              {"final_std_cum_regret", std},
              {"final", format_mean_std(mean, std)},
              {"single_run", agg.single_run},
              {"opt_value", result.opt_value},
              {"config_fingerprint", result.config_fingerprint},
              {"instance_fingerprint", result.instance_fingerprint},
              {"master_seed", result.config.master_seed},
              {"run_seeds", seeds},
              {"final_regret_per_run", finals},
              {"oracle_budget_warnings", warnings},
              {"config", result.config.to_json()}};
    j["config"].erase("output");
    if (result.benchmark) {
        const auto& b = *result.benchmark;
        j["benchmark"] = {{"seeds", b.seeds.nodes},
                          {"spread", b.spread},
                          {"alpha", b.alpha},
                          {"beta", b.beta},
                          {"budget_exhausted", b.budget_exhausted}};
    }
    return j;
}

void emit_report(const RunResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    const auto& agg = result.aggregate;
    {
        OutFile f(dir / "per_round.csv");
        auto& out = f.stream();
        out << "round,mean_cum_regret,std_cum_regret\n";
        for (std::size_t t = 0; t < agg.mean.size(); ++t) {
            out << (t + 1) << ',' << num(agg.mean[t]) << ',' << num(agg.std[t]) << '\n';
        }
        f.close();
    }
    {
        OutFile f(dir / "per_run.csv");
        auto& out = f.stream();
        out << "run,seed,final_cum_regret,budget_warnings\n";
        for (const auto& r : result.runs) {
            out << r.run << ',' << r.seed << ',' << num(r.final_regret) << ',' << r.budget_warnings << '\n';
        }
        f.close();
    }
    if (!result.curves.empty()) {
        OutFile f(dir / "curves.csv");
        auto& out = f.stream();
        out << "round";
        for (std::size_t r = 0; r < result.curves.size(); ++r) out << ",run_" << r;
        out << '\n';
        for (std::size_t t = 0; t < agg.mean.size(); ++t) {
            out << (t + 1);
            for (const auto& c : result.curves) out << ',' << num(c[t]);
            out << '\n';
        }
        f.close();
    }
    {
        OutFile f(dir / "summary.json");
        f.stream() << summary_json(result).dump(2) << '\n';
        f.close();
    }
    {
        OutFile f(dir / "timing.json");
        f.stream() << json{{"wall_seconds", result.wall_seconds}}.dump(2) << '\n';
        f.close();
    }
}

std::string render_report(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
    std::vector<std::filesystem::path> summaries;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().filename() == "summary.json") summaries.push_back(entry.path());
    }
    if (summaries.empty()) throw std::runtime_error("no summary.json under " + dir.string());
    std::sort(summaries.begin(), summaries.end());

    std::ostringstream out;
    char line[512];
    std::snprintf(line, sizeof line, "%-28s %-14s %-10s %8s %6s  %s\n", "experiment", "policy", "family", "T",
                  "runs", "final regret");
    out << line;
    for (const auto& path : summaries) {
        std::ifstream in(path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(path.string() + ": " + e.what());
        }
        auto rel = std::filesystem::relative(path.parent_path(), dir).generic_string();
        if (rel.empty() || rel == ".") rel = dir.filename().string();
        std::snprintf(line, sizeof line, "%-28s %-14s %-10s %8lld %6llu  %s\n", rel.c_str(),
                      j.at("policy").get<std::string>().c_str(), j.at("family").get<std::string>().c_str(),
                      static_cast<long long>(j.at("horizon").get<std::int64_t>()),
                      static_cast<unsigned long long>(j.at("runs").get<std::uint64_t>()),
                      j.at("final").get<std::string>().c_str());
        out << line;
    }
    return out.str();
}

}  // namespace cmab
