#include "doctest.h"

#include <cmath>

#include "cmab/environments/cascade.hpp"
#include "cmab/environments/pmc.hpp"
#include "cmab/harness/problem.hpp"
#include "cmab/oracles/exact.hpp"
#include "cmab/policies/cts.hpp"
#include "cmab/policies/policy.hpp"
#include "cmab/policies/ucb.hpp"
#include "cmab/testing/reference.hpp"
#include "support.hpp"

using namespace cmab;

namespace {

Feedback feedback_of(std::initializer_list<std::pair<std::size_t, double>> entries) {
    Feedback fb;
    for (const auto& [arm, x] : entries) fb.entries.push_back({BaseArmId{arm}, x});
    return fb;
}

UcbState ucb_state(std::size_t arms, std::int64_t t) {
    UcbState s(arms);
    s.t = t;
    return s;
}

double cucb_formula(double mu, double n, double t) { return std::min(1.0, mu + std::sqrt(1.5 * std::log(t) / n)); }

}  // namespace

TEST_CASE("cts_sample from the uniform prior") {
    CtsState state(1);
    Rng rng(derive_seed(1, 0));
    const auto m = test::monte_carlo(100'000, [&] { return cts_sample(state, rng)[0]; });
    // Beta(1, 1) has mean 1/2 and standard deviation 1/sqrt(12).
    CHECK(std::abs(m.mean - 0.5) <= 3.0 * std::sqrt(1.0 / 12.0 / 100'000));
    CHECK(m.se * std::sqrt(100'000.0) == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(0.01));
}

TEST_CASE("cts_sample concentrates with a large posterior") {
    CtsState state(3);
    state.a.assign(3, 1e6);
    state.b.assign(3, 1.0);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const auto theta = cts_sample(state, rng);
        for (std::size_t k = 0; k < 3; ++k) CHECK(theta[k] > 0.99);
    }
}

TEST_CASE("cts_sample is deterministic given state and seed") {
    CtsState state(5, 2.0, 3.0);
    Rng a(7), b(7);
    CHECK(cts_sample(state, a) == cts_sample(state, b));
    CHECK_THROWS_AS(CtsState(2, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("cts_update conjugate examples") {
    Rng rng(3);
    CtsState one(2);
    cts_update(one, feedback_of({{0, 1.0}}), rng);
    CHECK(one.a[0] == 2.0);
    CHECK(one.b[0] == 1.0);
    CHECK(one.posterior_mean(0) == doctest::Approx(2.0 / 3.0));

    CtsState zero(2);
    cts_update(zero, feedback_of({{1, 0.0}}), rng);
    CHECK(zero.a[1] == 1.0);
    CHECK(zero.b[1] == 2.0);

    CHECK_THROWS_AS(cts_update(zero, feedback_of({{0, 1.5}}), rng), std::invalid_argument);
    CHECK_THROWS_AS(cts_update(zero, feedback_of({{0, -0.1}}), rng), std::invalid_argument);
    CHECK_THROWS_AS(cts_update(zero, feedback_of({{2, 1.0}}), rng), std::invalid_argument);
}

TEST_CASE("cts_update consumes no randomness for binary outcomes") {
    CtsState state(4);
    Rng used(11), untouched(11);
    cts_update(state, feedback_of({{0, 1.0}, {1, 0.0}, {2, 1.0}, {3, 0.0}}), used);
    CHECK(used == untouched);
    cts_update(state, feedback_of({{0, 0.5}}), used);
    CHECK_FALSE(used == untouched);
}

TEST_CASE("cts_update Bernoulli rounding frequency") {
    CtsState state(1);
    Rng rng(derive_seed(4, 0));
    constexpr std::size_t n = 100'000;
    Feedback fb = feedback_of({{0, 0.7}});
    for (std::size_t i = 0; i < n; ++i) cts_update(state, fb, rng);
    CHECK(state.a[0] + state.b[0] - 2.0 == static_cast<double>(n));
    CHECK(test::frequency_ok((state.a[0] - 1.0) / n, 0.7, n));
}

TEST_CASE("cucb_indices examples") {
    auto s = ucb_state(3, 7);
    s.count = {0, 4, 6};
    s.sum = {0.0, 4.0, 3.0};
    const auto idx = cucb_indices(s);
    CHECK(idx[0] == 1.0);
    CHECK(idx[1] == 1.0);
    // 0.5 + sqrt(1.5 ln 7 / 6) = 1.197..., clipped
    CHECK(idx[2] == 1.0);

    auto u = ucb_state(1, 50);
    u.count = {100};
    u.sum = {20.0};
    CHECK(cucb_indices(u)[0] == doctest::Approx(0.2 + std::sqrt(1.5 * std::log(50.0) / 100.0)).epsilon(1e-12));
    CHECK(cucb_indices(u, 0.5)[0] == doctest::Approx(0.2 + std::sqrt(0.5 * std::log(50.0) / 100.0)).epsilon(1e-12));

    auto bad = ucb_state(1, 0);
    CHECK_THROWS_AS(cucb_indices(bad), std::invalid_argument);
}

TEST_CASE("cucb index is non-increasing in N and non-decreasing in t") {
    for (double mu : {0.0, 0.1, 0.5, 0.9}) {
        for (std::int64_t t : {2, 10, 1000, 100000}) {
            double last = 2.0;
            for (std::int64_t n = 1; n < 5000; n = n * 3 / 2 + 1) {
                auto s = ucb_state(1, t);
                s.count = {n};
                s.sum = {mu * static_cast<double>(n)};
                const double v = cucb_indices(s)[0];
                CHECK(v == doctest::Approx(cucb_formula(mu, static_cast<double>(n), static_cast<double>(t))));
                CHECK(v <= last);
                last = v;
            }
        }
        for (std::int64_t n : {1, 10, 1000}) {
            double last = -1.0;
            for (std::int64_t t = 1; t < 1'000'000; t *= 3) {
                auto s = ucb_state(1, t);
                s.count = {n};
                s.sum = {mu * static_cast<double>(n)};
                const double v = cucb_indices(s)[0];
                CHECK(v >= last);
                last = v;
            }
        }
    }
}

TEST_CASE("klucb_index closed-form boundaries") {
    CHECK(klucb_index(1.0, 5, 100) == 1.0);
    for (std::int64_t n : {1, 10, 200}) {
        for (std::int64_t t : {3, 100, 10000}) {
            const double lt = std::log(static_cast<double>(t));
            const double expected = 1.0 - std::exp(-(lt + 3.0 * std::log(lt)) / static_cast<double>(n));
            CHECK(klucb_index(0.0, n, t) == doctest::Approx(expected).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(klucb_index(0.5, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(klucb_index(1.2, 3, 10), std::invalid_argument);
    CHECK_THROWS_AS(klucb_index(0.5, 3, 0), std::invalid_argument);
}

TEST_CASE("klucb_index against a fine grid search") {
    const double grid = reference::klucb_by_grid(0.3, 50, 1000);
    CHECK(std::abs(klucb_index(0.3, 50, 1000) - grid) <= 1e-6);
    Rng rng(5);
    std::uniform_real_distribution<double> mu(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> n(1, 500), t(2, 100000);
    for (int i = 0; i < 20; ++i) {
        const double m = mu(rng);
        const auto nn = n(rng), tt = t(rng);
        INFO("mu " << m << " N " << nn << " t " << tt);
        CHECK(std::abs(klucb_index(m, nn, tt) - reference::klucb_by_grid(m, nn, tt)) <= 1e-6);
    }
}

TEST_CASE("klucb_index properties") {
    CHECK(bernoulli_kl(0.3, 0.3) == 0.0);
    CHECK(bernoulli_kl(0.0, 0.5) == doctest::Approx(std::log(2.0)));
    for (double m : {0.0, 0.05, 0.3, 0.7, 0.95}) {
        double last_n = 2.0;
        for (std::int64_t n = 1; n < 20000; n = n * 2 + 1) {
            const double v = klucb_index(m, n, 1000);
            CHECK(v >= m);
            CHECK(v <= last_n + 1e-9);
            last_n = v;
        }
        double last_t = -1.0;
        for (std::int64_t t = 2; t < 10'000'000; t *= 4) {
            const double v = klucb_index(m, 40, t);
            CHECK(v >= last_t - 1e-9);
            last_t = v;
        }
    }
    // kl(mu, 1) is finite only at mu = 1, so the index reaches 1 only there.
    CHECK(std::isinf(bernoulli_kl(0.9, 1.0)));
    CHECK(bernoulli_kl(1.0, 1.0) == 0.0);
    CHECK(klucb_index(0.9, 1, 100) < 1.0);
}

TEST_CASE("ts_cascade with z = 0 returns the clipped empirical means") {
    auto s = ucb_state(4, 20);
    s.count = {0, 5, 10, 2};
    s.sum = {0.0, 1.0, 10.0, 1.0};
    CHECK(ts_cascade_theta(s, TsWidth::VarianceAware, 0.0) == MeanVector(std::vector<double>{0.0, 0.2, 1.0, 0.5}));

    TsCascadePolicy policy(4, TsWidth::VarianceAware);
    Rng rng(6);
    for (int i = 0; i < 5; ++i) policy.update(feedback_of({{1, 1.0}, {1, 0.0}}), rng);
    policy.force_perturbation(0.0);
    const auto theta = policy.parameters(3, rng);
    CHECK(theta[0] == 0.0);
    CHECK(theta[1] == doctest::Approx(0.5));
}

TEST_CASE("ts_cascade applies one shared perturbation") {
    auto s = ucb_state(6, 50);
    s.count.assign(6, 8);
    s.sum.assign(6, 3.0);
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const auto theta = ts_cascade_sample(s, TsWidth::VarianceAware, rng);
        for (std::size_t k = 1; k < 6; ++k) CHECK(theta[k] == theta[0]);
    }
}

TEST_CASE("ts_cascade width formula and unobserved arms") {
    auto s = ucb_state(2, 99);
    s.count = {0, 30};
    s.sum = {0.0, 12.0};
    const double l = std::log(100.0);
    CHECK(ts_cascade_width(s, 0, TsWidth::VarianceAware) == doctest::Approx(l));
    const double v = 0.4 * 0.6;
    CHECK(ts_cascade_width(s, 1, TsWidth::VarianceAware) ==
          doctest::Approx(std::max(std::sqrt(v * l / 31.0), l / 31.0)));
    CHECK(ts_cascade_width(s, 1, TsWidth::GaussianOnly) == doctest::Approx(std::sqrt(v * l / 31.0)));
}

TEST_CASE("ts_cascade sample moments match the width") {
    auto s = ucb_state(1, 1000);
    s.count = {1000};
    s.sum = {500.0};
    const double width = ts_cascade_width(s, 0, TsWidth::VarianceAware);
    Rng rng(derive_seed(8, 0));
    constexpr std::size_t n = 100'000;
    const auto m = test::monte_carlo(n, [&] { return ts_cascade_sample(s, TsWidth::VarianceAware, rng)[0]; });
    const double sd = m.se * std::sqrt(static_cast<double>(n));
    // Sample std of a Gaussian has standard error sigma / sqrt(2n).
    CHECK(std::abs(sd - width) <= 3.0 * width / std::sqrt(2.0 * n));
    CHECK(test::within_3se(m, 0.5));
}

TEST_CASE("randomize_saturated only moves saturated entries") {
    std::vector<double> idx{1.0, 0.4, 1.0, 0.999, 1.0};
    Rng rng(9);
    randomize_saturated(idx, rng);
    CHECK(idx[1] == 0.4);
    CHECK(idx[3] == 0.999);
    for (std::size_t i : {0u, 2u, 4u}) {
        CHECK(idx[i] < 1.0);
        CHECK(idx[i] >= 1.0 - 1e-12);
    }
    CHECK(tie_order_from_string("random") == TieOrder::Random);
    CHECK(tie_order_from_string("lowest_index") == TieOrder::LowestIndex);
}

TEST_CASE("CUCB at t = 1 with lowest-index ties plays items 0..K-1") {
    UcbPolicy cucb("cucb", 8, IndexRule::Cucb, 1.5, false, TieOrder::LowestIndex);
    Rng rng(10);
    const auto theta = cucb.parameters(1, rng);
    for (std::size_t i = 0; i < 8; ++i) CHECK(theta[i] == 1.0);
    TopKOracle oracle(8, 1, 3);
    CHECK(std::get<RankedLists>(oracle.solve(theta.values(), rng)) == RankedLists{{{0, 1, 2}}});
}

TEST_CASE("CUCB at t = 1 with random ties plays a seeded permutation") {
    std::set<std::vector<std::size_t>> seen;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        UcbPolicy cucb("cucb", 8, IndexRule::Cucb, 1.5, false);
        Rng rng(seed), again(seed);
        const auto theta = cucb.parameters(1, rng);
        CHECK(theta == cucb.parameters(1, again));
        seen.insert(std::get<RankedLists>(TopKOracle(8, 1, 3).solve(theta.values(), rng)).lists[0]);
    }
    CHECK(seen.size() > 1);
}

TEST_CASE("CascadeUCB1 index equals cucb_indices on identical statistics") {
    Rng env_rng(11), rng(12);
    CascadeEnvironment env({6, 2, 2, test::uniform_vector(12, env_rng), CascadeForm::Disjunctive});
    UcbPolicy ucb1("cascade_ucb1", 12, IndexRule::Cucb, 1.5, true, TieOrder::LowestIndex);
    ucb1.initialize(env, env_rng);
    for (std::size_t i = 0; i < 12; ++i) CHECK(ucb1.state().count[i] == 1);
    TopKOracle oracle(6, 2, 2);
    for (std::int64_t t = 1; t <= 200; ++t) {
        const auto theta = ucb1.parameters(t, rng);
        CHECK(theta == cucb_indices(ucb1.state()));
        const auto s = oracle.solve(theta.values(), rng);
        ucb1.update(env.step(s, env_rng).feedback, rng);
    }
}

TEST_CASE("CascadeKL-UCB index matches klucb_index per arm") {
    UcbPolicy kl("cascade_klucb", 3, IndexRule::KlUcb, 1.5, false, TieOrder::LowestIndex);
    Rng rng(13);
    kl.update(feedback_of({{0, 1.0}, {0, 0.0}, {0, 0.0}, {1, 1.0}}), rng);
    const auto theta = kl.parameters(10, rng);
    CHECK(theta[0] == doctest::Approx(klucb_index(1.0 / 3.0, 3, 10)));
    CHECK(theta[1] == 1.0);
    CHECK(theta[2] == 1.0);
}

TEST_CASE("CTS with point-mass posteriors picks the optimum") {
    Rng rng(14);
    const auto p = test::uniform_vector(18, rng);
    PmcInstance inst{6, 3, 2, p, 0.05};
    CtsState state(18);
    for (std::size_t i = 0; i < 18; ++i) {
        state.a[i] = 1e9 * p[i] + 1.0;
        state.b[i] = 1e9 * (1.0 - p[i]) + 1.0;
    }
    ExhaustiveSubsetOracle oracle(inst);
    const auto best = reference::best_subset(6, 3, 2, 0.05, p);
    for (int i = 0; i < 20; ++i) {
        const auto theta = cts_sample(state, rng);
        CHECK(oracle.best(theta.values()).items == best.items);
    }
}

TEST_CASE("CTS converges on B_LB(8, 2, 0.2, 0.15)") {
    CascadeEnvironment env(make_blb_instance(8, 2, 0.2, 0.15));
    CtsPolicy cts(env.arm_count());
    TopKOracle oracle(8, 1, 2);
    Rng policy_rng(derive_seed(2024, 1)), oracle_rng(derive_seed(2024, 2)), env_rng(derive_seed(2024, 3));
    std::size_t optimal = 0, total = 0;
    std::size_t feedback_entries = 0;
    for (std::int64_t t = 1; t <= 10000; ++t) {
        const auto s = oracle.solve(cts.parameters(t, policy_rng).values(), oracle_rng);
        const auto out = env.step(s, env_rng);
        feedback_entries += out.feedback.entries.size();
        cts.update(out.feedback, policy_rng);
        if (t >= 5000) {
            auto list = std::get<RankedLists>(s).lists[0];
            std::sort(list.begin(), list.end());
            optimal += list == std::vector<std::size_t>{0, 1};
            ++total;
        }
    }
    const double fraction = static_cast<double>(optimal) / static_cast<double>(total);
    INFO("fraction optimal " << fraction);
    CHECK(fraction >= 0.95);

    double updates = 0.0;
    for (std::size_t i = 0; i < cts.state().size(); ++i) updates += cts.state().a[i] + cts.state().b[i] - 2.0;
    CHECK(updates == static_cast<double>(feedback_entries));
}

TEST_CASE("policies are deterministic given their seeds") {
    CascadeEnvironment env(make_blb_instance(6, 2, 0.3, 0.1));
    for (const char* name : {"cts", "cucb", "cascade_ucb1", "cascade_klucb", "ts_cascade"}) {
        std::vector<SuperArm> played[2];
        for (int rep = 0; rep < 2; ++rep) {
            PolicySpec spec;
            spec.name = name;
            auto policy = make_policy(spec, env);
            TopKOracle oracle(6, 1, 2);
            Rng prng(5), orng(6), erng(7);
            policy->initialize(env, erng);
            for (std::int64_t t = 1; t <= 300; ++t) {
                const auto s = oracle.solve(policy->parameters(t, prng).values(), orng);
                policy->update(env.step(s, erng).feedback, prng);
                played[rep].push_back(s);
            }
        }
        CHECK_MESSAGE(played[0] == played[1], name);
    }
}

TEST_CASE("OracleReplayPolicy reports the true means") {
    const MeanVector mu(std::vector<double>{0.1, 0.9});
    OracleReplayPolicy replay(mu);
    Rng rng(15);
    CHECK(replay.parameters(1, rng) == mu);
    CHECK(replay.parameters(1000, rng) == mu);
}
