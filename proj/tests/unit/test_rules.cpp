#include <doctest.h>

#include "helpers.hpp"
#include "twostage/engine.hpp"
#include "twostage/rules.hpp"

using namespace twostage;
using testing::grid;
using testing::rows_of;

namespace {

Config shift(const Config& c, int dx, int dy) {
    Config out(c.width(), c.height(), c.kappa(), c.boundary());
    for (int y = 0; y < c.height(); ++y)
        for (int x = 0; x < c.width(); ++x)
            out.set((x + dx) % c.width(), (y + dy) % c.height(), c.at(x, y));
    return out;
}

bool is_monotone_rule(const std::string& name) { return name != "cyclic"; }

}  // namespace

TEST_CASE("rule tables") {
    CHECK(make_rule("standard").monotone);
    CHECK_FALSE(make_rule("cyclic").monotone);
    CHECK(make_rule("multicolor", 2) == make_rule("standard", 2));
    for (const auto& name : rule_names()) {
        CHECK(make_rule(name).monotone == is_monotone_rule(name));
    }
    CHECK(make_rule("multicolor", 4).transitions.size() == 5);
    CHECK_FALSE(make_rule("multicolor", 4).transitions[4].has_value());
    CHECK_THROWS_AS(make_rule("standard", 3), Error);
    CHECK_THROWS_AS(make_rule("multicolor", 1), Error);
    CHECK_THROWS_AS(make_rule("majority"), Error);
}

TEST_CASE("single steps") {
    const RuleTable standard = make_rule("standard");
    const RuleTable modified = make_rule("modified");

    SUBCASE("202 with vertical 1s") {
        const Config c = grid({"010", "202", "010"});
        const Config s1 = step(c, standard);
        CHECK(rows_of(s1) == std::vector<std::string>{"010", "212", "010"});
        CHECK(rows_of(step(s1, standard)) == std::vector<std::string>{"010", "222", "010"});
        CHECK(step(c, modified) == c);
        CHECK(run_to_fixpoint(c, modified).final == c);
    }
    SUBCASE("two 1s between two 2s") {
        CHECK(rows_of(step(grid({"21", "12"}), standard)) == std::vector<std::string>{"22", "22"});
    }
    SUBCASE("competition tie leaves the 0") {
        const Config c = grid({"010", "202", "010"});
        CHECK(step(c, make_rule("competition")) == c);
        CHECK(rows_of(step(grid({"010", "000", "010"}), make_rule("competition")))[1] == "010");
        CHECK(rows_of(step(grid({"000", "202", "000"}), make_rule("competition")))[1] == "222");
    }
    SUBCASE("polluted rules never create 2s") {
        const Config c = grid({"21", "12"});
        CHECK(step(c, make_rule("polluted-standard")) == c);
        CHECK(step(c, make_rule("polluted-modified")) == c);
    }
    SUBCASE("n2p needs 2s along both axes") {
        const RuleTable n2p = make_rule("standard-n2p");
        CHECK(rows_of(step(grid({"212"}), n2p)) == std::vector<std::string>{"212"});
        CHECK(rows_of(step(grid({"212"}), standard)) == std::vector<std::string>{"222"});
        CHECK(rows_of(step(grid({"21", "12"}), n2p)) == std::vector<std::string>{"22", "22"});
    }
    SUBCASE("cyclic 2s fall to 0") {
        CHECK(rows_of(step(grid({"020"}), make_rule("cyclic")))[0] == "000");
    }
    SUBCASE("kappa mismatch") {
        CHECK_THROWS_AS(step(grid({"0"}, "torus", 3), standard), Error);
    }
}

TEST_CASE("monotone rules never lower a state") {
    FixtureRng rng(21);
    for (const auto& name : rule_names()) {
        if (!is_monotone_rule(name)) continue;
        const int kappa = name == "multicolor" ? 4 : 2;
        const RuleTable rule = make_rule(name, kappa);
        for (int t = 0; t < 20; ++t) {
            const Config c = testing::random_config(rng, 12, 10, kappa, BoundaryMode::torus());
            const Config n = step(c, rule);
            for (std::size_t i = 0; i < c.size(); ++i) {
                CHECK(n.cells()[i] >= c.cells()[i]);
                if (name == "competition" && c.cells()[i] != 0) CHECK(n.cells()[i] == c.cells()[i]);
            }
        }
    }
}

TEST_CASE("step is translation equivariant on the torus") {
    FixtureRng rng(8);
    for (const auto& name : rule_names()) {
        const RuleTable rule = make_rule(name, name == "multicolor" ? 3 : 2);
        for (int t = 0; t < 10; ++t) {
            const Config c = testing::random_config(rng, 7, 5, rule.kappa, BoundaryMode::torus());
            const int dx = rng.uniform_int(0, 6);
            const int dy = rng.uniform_int(0, 4);
            CHECK(step(shift(c, dx, dy), rule) == shift(step(c, rule), dx, dy));
            CHECK(step(c, rule) == step(c, rule));
        }
    }
}

TEST_CASE("standard and modified agree without 0s") {
    FixtureRng rng(4);
    for (int t = 0; t < 30; ++t) {
        Config c = testing::random_pq(rng, 10, 10, 0.6, 0.4, BoundaryMode::frozen_exterior(1));
        CHECK(step(c, make_rule("standard")) == step(c, make_rule("modified")));
    }
}

TEST_CASE("apply_rule treats absent neighbors as matching nothing") {
    const RuleTable standard = make_rule("standard");
    CHECK(apply_rule(standard, 0, {1, -1, 1, -1}) == 1);
    CHECK(apply_rule(standard, 0, {1, -1, -1, -1}) == 0);
    CHECK(apply_rule(standard, 1, {2, 2, -1, -1}) == 2);
    CHECK(apply_rule(make_rule("modified"), 0, {1, 1, -1, -1}) == 0);
    CHECK(apply_rule(make_rule("modified"), 0, {1, -1, -1, 1}) == 1);
}
