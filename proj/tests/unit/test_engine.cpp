#include <doctest.h>

#include "helpers.hpp"
#include "twostage/engine.hpp"

using namespace twostage;
using testing::grid;
using testing::rows_of;

TEST_CASE("fixpoint runs") {
    const RuleTable standard = make_rule("standard");
    SUBCASE("already stable") {
        const RunReport r = run_to_fixpoint(grid({"202"}), standard);
        CHECK(r.steps == 0);
        CHECK(r.halt == HaltReason::Fixpoint);
        CHECK(rows_of(r.final) == std::vector<std::string>{"202"});
    }
    SUBCASE("two steps to fill the middle") {
        const RunReport r = run_to_fixpoint(grid({"010", "202", "010"}), standard);
        CHECK(r.steps == 2);
        CHECK(r.halt == HaltReason::Fixpoint);
        CHECK(rows_of(r.final) == std::vector<std::string>{"010", "222", "010"});
        CHECK(run_frontier(grid({"010", "202", "010"}), standard) == r.final);
    }
    SUBCASE("budget") {
        const RunReport r = run_to_fixpoint(grid({"010", "202", "010"}), standard, 1);
        CHECK(r.steps == 1);
        CHECK(r.halt == HaltReason::StepBudgetExhausted);
        CHECK(rows_of(r.final) == std::vector<std::string>{"010", "212", "010"});
    }
}

TEST_CASE("cyclic rule reports the recurring configuration") {
    const Config c = grid({"0102", "1202", "0011", "0212"}, "torus");
    const RuleTable cyclic = make_rule("cyclic");
    const RunReport r = run_to_fixpoint(c, cyclic);
    REQUIRE(r.halt == HaltReason::CycleDetected);
    CHECK(r.steps == 7);
    CHECK(r.period == 4);
    CHECK(rows_of(r.final) == std::vector<std::string>{"2022", "0121", "2220", "2101"});

    Config x = c;
    for (long long i = 0; i < r.steps; ++i) x = step(x, cyclic);
    CHECK(x == r.final);
    Config y = r.final;
    for (long long p = 1; p <= r.period; ++p) {
        y = step(y, cyclic);
        CHECK((y == r.final) == (p == r.period));
    }
    CHECK_THROWS_AS(run_frontier(c, cyclic), Error);

    const RunReport s = run_with_snapshots(c, cyclic, {0, 3});
    CHECK(s.halt == HaltReason::CycleDetected);
    CHECK(s.final == r.final);
    CHECK(s.period == r.period);
}

TEST_CASE("frontier runner matches the naive runner") {
    FixtureRng rng(17);
    for (const auto& name : rule_names()) {
        if (name == "cyclic") continue;
        const int kappa = name == "multicolor" ? 3 : 2;
        const RuleTable rule = make_rule(name, kappa);
        for (int t = 0; t < 15; ++t) {
            const BoundaryMode b = t % 2 ? BoundaryMode::torus() : BoundaryMode::frozen_exterior(t % 3);
            Config c(rng.uniform_int(2, 25), rng.uniform_int(2, 25), kappa, b);
            for (auto& s : c.cells()) {
                const double u = rng.unit();
                s = u < 0.05 ? kappa : (u < 0.6 ? static_cast<State>(rng.uniform_int(1, kappa)) : 0);
            }
            const RunReport naive = run_to_fixpoint(c, rule);
            CHECK(naive.halt == HaltReason::Fixpoint);
            CHECK(run_frontier(c, rule) == naive.final);
            const RunReport snap = run_with_snapshots(c, rule, {});
            CHECK(snap.final == naive.final);
            CHECK(snap.steps == naive.steps);
            CHECK(naive.steps <= kappa * static_cast<long long>(c.size()));
            CHECK(step(naive.final, rule) == naive.final);
        }
    }
}

TEST_CASE("stepper agrees with step for every rule") {
    FixtureRng rng(2);
    for (const auto& name : rule_names()) {
        const RuleTable rule = make_rule(name);
        const Config c = testing::random_config(rng, 9, 8, 2, BoundaryMode::torus());
        Stepper st(c, rule);
        Config ref = c;
        for (int i = 0; i < 12; ++i) {
            const Config next = step(ref, rule);
            CHECK(st.advance() == (next != ref));
            ref = next;
            CHECK(st.current() == ref);
        }
    }
}

TEST_CASE("snapshots") {
    const RuleTable standard = make_rule("standard");
    const Config c = grid({"010", "202", "010"});
    SUBCASE("time zero is the initial config") {
        const RunReport r = run_with_snapshots(c, standard, {0});
        REQUIRE(r.snapshots.size() == 1);
        CHECK(r.snapshots[0].time == 0);
        CHECK(r.snapshots[0].config == c);
    }
    SUBCASE("each requested time") {
        const RunReport r = run_with_snapshots(c, standard, {0, 1, 1, 5});
        REQUIRE(r.snapshots.size() == 4);
        CHECK(rows_of(r.snapshots[1].config) == std::vector<std::string>{"010", "212", "010"});
        CHECK(r.snapshots[2].config == r.snapshots[1].config);
        CHECK(r.snapshots[3].time == 5);
        CHECK(r.snapshots[3].config == r.final);
    }
    SUBCASE("times must not decrease") {
        CHECK_THROWS_AS(run_with_snapshots(c, standard, {2, 1}), Error);
        CHECK_THROWS_AS(run_with_snapshots(c, standard, {-1}), Error);
    }
    SUBCASE("snapshot at t equals t naive steps") {
        FixtureRng rng(9);
        const Config r0 = testing::random_pq(rng, 30, 30, 0.5, 0.05, BoundaryMode::torus());
        const RunReport r = run_with_snapshots(r0, standard, {0, 2, 7});
        Config x = r0;
        for (int t = 0, k = 0; t <= 7; ++t) {
            if (t == r.snapshots[k].time) CHECK(r.snapshots[k++].config == x);
            x = step(x, standard);
        }
    }
}

TEST_CASE("internal dynamics") {
    const RuleTable standard = make_rule("standard");
    SUBCASE("zero_to_one turns 0s into 1s inside the region") {
        const Config c = grid({"000", "020", "000"});
        RegionMask region(3, 3);
        region.set_rect({0, 0, 1, 1});
        const RunReport r = run_internal(c, region, standard, true);
        CHECK(r.final.boundary() == BoundaryMode::masked());
        CHECK(rows_of(r.final) == std::vector<std::string>{"11.", "12.", "..."});
    }
    SUBCASE("outside states do not leak in") {
        const Config c = grid({"202", "010"});
        RegionMask region(3, 2);
        region.set(1, 0);
        region.set(1, 1);
        const RunReport r = run_internal(c, region, standard, false);
        CHECK(rows_of(r.final) == std::vector<std::string>{".0.", ".1."});
        CHECK(r.steps == 0);
    }
    SUBCASE("empty region") {
        CHECK_THROWS_AS(run_internal(grid({"0"}), RegionMask(1, 1), standard, false), Error);
    }
    SUBCASE("spanning is monotone in the initial 2s") {
        FixtureRng rng(33);
        for (int t = 0; t < 40; ++t) {
            Config c = testing::random_pq(rng, 12, 12, 0.9, 0.04, BoundaryMode::frozen_exterior(0));
            RegionMask region(12, 12);
            region.set_rect({2, 2, 9, 9});
            const RunReport before = run_internal(c, region, standard, true);
            Config more = c;
            more.set(rng.uniform_int(2, 9), rng.uniform_int(2, 9), 2);
            const RunReport after = run_internal(more, region, standard, true);
            for (std::size_t i = 0; i < c.size(); ++i) {
                CHECK(after.final.cells()[i] >= before.final.cells()[i]);
            }
        }
    }
}

TEST_CASE("config hash") {
    const Config a = grid({"012", "210"});
    Config b = a;
    CHECK(config_hash(a) == config_hash(b));
    b.set(0, 0, 1);
    CHECK(config_hash(a) != config_hash(b));
    CHECK(default_max_steps(a, make_rule("standard")) == 12);
    CHECK(default_max_steps(a, make_rule("cyclic")) == 60);
}
