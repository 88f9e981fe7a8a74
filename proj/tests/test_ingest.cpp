#include "doctest.h"

#include <cmath>
#include <sstream>

#include "cmab/core/errors.hpp"
#include "cmab/environments/influence.hpp"
#include "cmab/ingest/edge_list.hpp"
#include "cmab/ingest/movielens.hpp"
#include "cmab/ingest/serialize.hpp"
#include "cmab/testing/reference.hpp"

using namespace cmab;

namespace {

constexpr const char* kMovies =
    "movieId,title,genres\n"
    "1,A (1999),Action|Comedy\n"
    "2,\"B, The (2001)\",Action\n"
    "3,C (2003),Drama\n"
    "4,D (2005),Comedy|Drama\n"
    "5,E (2007),Horror\n";

// Timestamp 1400000000 is inside the default window; 1000 is far before it.
constexpr const char* kRatings =
    "userId,movieId,rating,timestamp\n"
    "10,1,4.0,1400000000\n"
    "20,2,5.0,1400000000\n"
    "20,3,3.0,1400000000\n"
    "30,3,4.0,1400000000\n"
    "30,4,2.0,1400000000\n"
    "30,5,1.0,1400000000\n"
    "40,1,2.0,1400000000\n"
    "40,5,5.0,1400000000\n"
    "50,2,1.0,1000\n";

RatingsTable hand_table() {
    std::istringstream r(kRatings), m(kMovies);
    return {read_ratings(r), read_genres(m)};
}

MovieLensOptions hand_options() {
    MovieLensOptions o;
    o.most_rated = 5;
    o.least_rated = 0;
    o.random_movies = 0;
    o.subset_size = 2;
    o.noise = 0.0;
    return o;
}

/// Straight recomputation of the attraction of (movie, user) from the raw
/// fixture: genre sets, per-user averaged genre vector, cosine, rating ratio.
double recompute(const std::vector<std::vector<int>>& genres, const std::vector<double>& avg,
                 const std::vector<int>& rated, int movie) {
    double u[kGenreCount] = {};
    for (int i : rated)
        for (int k : genres[i]) u[k] += 1.0 / rated.size();
    double dot = 0.0, uu = 0.0;
    for (double x : u) uu += x * x;
    for (int k : genres[movie]) dot += u[k];
    const double cos = dot / (std::sqrt(uu) * std::sqrt(static_cast<double>(genres[movie].size())));
    double max_avg = 0.0;
    for (double a : avg) max_avg = std::max(max_avg, a);
    return 0.2 * cos * avg[movie] / max_avg;
}

}  // namespace

TEST_CASE("readers parse quoted titles and genre labels") {
    const auto t = hand_table();
    CHECK(t.rows.size() == 9);
    CHECK(t.genres.size() == 5);
    CHECK(t.genres.at(2)[0] == 1.0);  // Action
    CHECK(t.genres.at(1)[4] == 1.0);  // Comedy
    double total = 0.0;
    for (double x : t.genres.at(4)) total += x;
    CHECK(total == 2.0);
}

TEST_CASE("hand fixture attraction matrix matches an independent recomputation") {
    const auto ml = build_movielens_instance(hand_table(), hand_options());
    const auto& inst = ml.instance;
    REQUIRE(ml.movie_ids == std::vector<std::int64_t>{1, 2, 3, 4, 5});
    REQUIRE(ml.user_ids == std::vector<std::int64_t>{10, 20, 30, 40});
    CHECK(inst.subset_size == 2);
    CHECK(inst.word_of_mouth == 0.05);

    // Action 0, Comedy 4, Drama 7, Horror 10; averages exclude the out-of-window row.
    const std::vector<std::vector<int>> genres{{0, 4}, {0}, {7}, {4, 7}, {10}};
    const std::vector<double> avg{3.0, 5.0, 3.5, 2.0, 3.0};
    const std::vector<std::vector<int>> rated{{0}, {1, 2}, {2, 3, 4}, {0, 4}};
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 5; ++i) {
            INFO("movie " << i << " user " << j);
            CHECK(inst.attraction[inst.arm(i, j)] == doctest::Approx(recompute(genres, avg, rated[j], i)).epsilon(1e-12));
        }
    }
    // user 10 rated only movie 1: aligned vectors, p = 0.2 * r / max r
    CHECK(inst.attraction[inst.arm(0, 0)] == doctest::Approx(0.2 * 3.0 / 5.0));
    CHECK(inst.attraction[inst.arm(1, 0)] == doctest::Approx(0.2 / std::sqrt(2.0)));
    CHECK(inst.attraction[inst.arm(3, 0)] == doctest::Approx(0.2 * 0.5 * 2.0 / 5.0));
    CHECK(inst.attraction[inst.arm(2, 0)] == 0.0);
}

TEST_CASE("noise interpretation and determinism") {
    auto o = hand_options();
    o.noise = 0.05;
    const auto a = build_movielens_instance(hand_table(), o);
    const auto b = build_movielens_instance(hand_table(), o);
    CHECK(fingerprint(a.instance) == fingerprint(b.instance));
    o.noise_parameter = NoiseParameter::StdDev;
    const auto c = build_movielens_instance(hand_table(), o);
    CHECK(fingerprint(a.instance) != fingerprint(c.instance));
    o.noise_seed = 99;
    CHECK(fingerprint(build_movielens_instance(hand_table(), o).instance) != fingerprint(c.instance));
    for (const auto* inst : {&a.instance, &c.instance})
        for (double p : inst->attraction) CHECK((p >= 0.0 && p <= 0.2 + 1e-12));
}

TEST_CASE("movielens ingestion errors") {
    auto o = hand_options();
    o.window_start = 0;
    o.window_end = 10;
    CHECK_THROWS_AS(build_movielens_instance(hand_table(), o), IngestError);

    o = hand_options();
    o.most_rated = 6;
    CHECK_THROWS_AS(build_movielens_instance(hand_table(), o), IngestError);

    auto t = hand_table();
    t.genres.erase(3);
    CHECK_THROWS_AS(build_movielens_instance(t, hand_options()), IngestError);

    std::istringstream bad_genre("movieId,title,genres\n1,X,Cooking\n");
    CHECK_THROWS_AS(read_genres(bad_genre), IngestError);
    std::istringstream bad_row("userId,movieId,rating,timestamp\n1,2,abc,5\n");
    try {
        read_ratings(bad_row);
        FAIL("expected IngestError");
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream empty("");
    CHECK_THROWS_AS(read_ratings(empty), IngestError);
    CHECK_THROWS_AS(load_ratings_table("/nonexistent/ratings.csv", "/nonexistent/movies.csv"), IngestError);
}

TEST_CASE("movielens fixture: selection, bounds and determinism") {
    const std::filesystem::path dir = CMAB_TEST_DATA_DIR;
    const auto table = load_ratings_table(dir / "movielens_small" / "ratings.csv", dir / "movielens_small" / "movies.csv");
    MovieLensOptions o;
    o.user_cap = 200;
    const auto a = build_movielens_instance(table, o);
    const auto b = build_movielens_instance(table, o);
    CHECK(a.instance.items == 30);
    CHECK(a.instance.users == 200);
    CHECK(fingerprint(a.instance) == fingerprint(b.instance));
    CHECK(a.movie_ids == b.movie_ids);
    CHECK(a.user_ids == b.user_ids);
    double max_p = 0.0;
    for (double p : a.instance.attraction) {
        CHECK((p >= 0.0 && p <= 0.2 + 1e-12));
        max_p = std::max(max_p, p);
    }
    CHECK(max_p > 0.0);
    o.selection_seed = 7;
    CHECK(build_movielens_instance(table, o).user_ids != a.user_ids);
}

TEST_CASE("edge list probabilities are 1 / outdegree") {
    std::istringstream in("# comment\n0 1\n1 0\n1 2\n1 3\n1 4\n");
    const auto g = load_edge_graph(in, false);
    CHECK(g.graph.node_count() == 5);
    CHECK(g.graph.edge_count() == 5);
    for (const auto& e : g.graph.edges()) CHECK(e.p == (e.src == 0 ? 1.0 : 0.25));
}

TEST_CASE("edge list cleaning: duplicates, self loops, relabelling, undirected") {
    std::istringstream in("10 20\n10 20\n10 10\n20 30\n\n30 10  # trailing comment\n");
    const auto g = load_edge_graph(in, false);
    CHECK(g.duplicates_collapsed == 1);
    CHECK(g.self_loops_dropped == 1);
    CHECK(g.original_ids == std::vector<std::int64_t>{10, 20, 30});
    REQUIRE(g.graph.edge_count() == 3);
    CHECK(g.graph.edge(0).src == 0);
    CHECK(g.graph.edge(0).dst == 1);
    CHECK(g.graph.edge(0).p == 1.0);

    std::istringstream und("0 1\n0 2\n1 0\n");
    const auto u = load_edge_graph(und, true);
    CHECK(u.graph.edge_count() == 4);
    CHECK(u.duplicates_collapsed == 2);
    for (std::size_t v = 0; v < u.graph.node_count(); ++v) {
        double sum = 0.0;
        for (auto e : u.graph.out_edges(v)) sum += u.graph.edge(e).p;
        CHECK(sum == 1.0);
    }
}

TEST_CASE("edge list malformed line reports its number") {
    std::istringstream in("0 1\n1 2\n3 x\n");
    try {
        load_edge_graph(in, false);
        FAIL("expected IngestError");
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::istringstream one("0 1 2 3\n");
    CHECK_THROWS_AS(load_edge_graph(one, false), IngestError);
    std::istringstream negative("-1 2\n");
    CHECK_THROWS_AS(load_edge_graph(negative, false), IngestError);
    CHECK_THROWS_AS(load_edge_graph(std::filesystem::path("/nonexistent/graph.txt"), false), IngestError);
}

TEST_CASE("star graph seeded at the hub has spread 2") {
    std::istringstream in("0 1\n0 2\n0 3\n0 4\n");
    const auto g = load_edge_graph(in, false);
    InfluenceEnvironment env(g.graph, 1);
    CHECK(env.reward(SeedSet{{0}}, g.graph.probabilities()) == doctest::Approx(2.0));
    CHECK(reference::spread_by_enumeration(g.graph, {0}, g.graph.probabilities()) == doctest::Approx(2.0));
    Rng rng(derive_seed(3, 0));
    // Var = 4 * 0.25 * 0.75, so the standard error at 1e5 draws is ~0.0027.
    CHECK(std::abs(im_spread(g.graph, SeedSet{{0}}, 100'000, rng) - 2.0) <= 3.0 * std::sqrt(0.75 / 100'000));
}

TEST_CASE("synthetic edge list is deterministic and loads cleanly") {
    const auto a = synthetic_edge_list(50, 200, 4);
    CHECK(a == synthetic_edge_list(50, 200, 4));
    CHECK(a != synthetic_edge_list(50, 200, 5));
    std::istringstream in(a);
    const auto g = load_edge_graph(in, false);
    CHECK(g.graph.edge_count() == 200);
    CHECK(g.duplicates_collapsed == 0);
    CHECK(g.self_loops_dropped == 0);
    CHECK_THROWS(synthetic_edge_list(3, 7, 1));
}

TEST_CASE("serialized instances round-trip with stable fingerprints") {
    const auto ml = build_movielens_instance(hand_table(), hand_options());
    const auto back = pmc_from_json(to_json(ml.instance));
    CHECK(back.attraction == ml.instance.attraction);
    CHECK(fingerprint(back) == fingerprint(ml.instance));

    std::istringstream in("0 1\n1 2\n2 0\n");
    const auto g = load_edge_graph(in, false).graph;
    const auto g2 = graph_from_json(to_json(g));
    CHECK(fingerprint(g2) == fingerprint(g));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(hex64(255) == "00000000000000ff");
}
