#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlohmann/json.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(CMAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "cmab_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write(const std::string& name, const std::string& text) {
    const auto p = workdir() / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("run writes a report and exits 0") {
    const auto cfg = write("ok.json", R"({
        "environment": {"family": "blb", "items": 6, "list_length": 2, "p": 0.2, "gap": 0.15},
        "policies": ["cts", "cucb"], "horizon": 200, "runs": 2, "output": "ok_out"})");
    CHECK(run("run " + cfg.string()) == 0);
    CHECK(fs::exists(workdir() / "ok_out" / "cts" / "summary.json"));
    CHECK(fs::exists(workdir() / "ok_out" / "cucb" / "per_round.csv"));
    CHECK(run("report " + (workdir() / "ok_out").string()) == 0);

    const auto redirected = workdir() / "redirected";
    CHECK(run("run " + cfg.string() + " --threads 2 --output " + redirected.string()) == 0);
    CHECK(slurp(redirected / "cts" / "per_round.csv") == slurp(workdir() / "ok_out" / "cts" / "per_round.csv"));
}

TEST_CASE("configuration errors exit 2") {
    CHECK(run("run " + write("bad_key.json", R"({"environment": {"family": "blb"}, "colour": 1})").string()) == 2);
    CHECK(run("run " + write("bad_family.json", R"({"environment": {"family": "nope"}})").string()) == 2);
    CHECK(run("run " + write("bad_json.json", "{").string()) == 2);
    CHECK(run("run " + write("bad_mode.json", R"({
        "environment": {"family": "blb", "items": 6, "list_length": 2, "p": 0.2, "gap": 0.15},
        "regret_mode": "realized_approx"})").string()) == 2);
}

TEST_CASE("ingestion errors exit 3") {
    const auto bad_edges = write("bad_edges.txt", "0 1\n1 x\n");
    CHECK(run("ingest-graph --input " + bad_edges.string() + " --out " + (workdir() / "g.json").string()) == 3);
    CHECK(run("run " + write("missing_instance.json", R"({
        "environment": {"family": "pmc", "instance": "does_not_exist.json", "subset_size": 2}})").string()) == 3);
}

TEST_CASE("ingest-graph and ingest-movielens write loadable instances") {
    const auto edges = write("edges.txt", "0 1\n0 2\n1 2\n");
    const auto out = workdir() / "graph.json";
    CHECK(run("ingest-graph --input " + edges.string() + " --out " + out.string()) == 0);
    const auto g = nlohmann::json::parse(slurp(out));
    CHECK(g.contains("fingerprint"));

    const auto syn = workdir() / "syn.json";
    CHECK(run("ingest-graph --synthetic-nodes 20 --synthetic-edges 50 --seed 3 --out " + syn.string()) == 0);

    const fs::path data = CMAB_TEST_DATA_DIR;
    const auto pmc = workdir() / "pmc.json";
    CHECK(run("ingest-movielens --ratings " + (data / "movielens_small" / "ratings.csv").string() + " --movies " +
              (data / "movielens_small" / "movies.csv").string() + " --user-cap 50 --out " + pmc.string()) == 0);
    const auto cfg = write("pmc_run.json", R"({
        "environment": {"family": "pmc", "instance": "pmc.json", "subset_size": 2},
        "policy": "cts", "horizon": 20, "output": "pmc_out"})");
    CHECK(run("run " + cfg.string()) == 0);
}

TEST_CASE("selftest passes") { CHECK(run("selftest") == 0); }
