#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "twostage/engine.hpp"
#include "twostage/structure.hpp"
#include "twostage/validation.hpp"

using namespace twostage;
using testing::grid;

namespace {

RegionMask full(const Config& c) { return RegionMask(c.width(), c.height(), true); }

// Whether the 2s inside r fill r under the internal dynamics of 2s on 1s.
bool fills(const Config& c, const Rect& r) {
    RegionMask region(c.width(), c.height());
    region.set_rect(r);
    const RunReport run = run_internal(c, region, make_rule("standard"), false);
    for (int y = r.y0; y <= r.y1; ++y)
        for (int x = r.x0; x <= r.x1; ++x)
            if (run.final.at(x, y) != 2) return false;
    return true;
}

Config filled(int w, int h, State s, BoundaryMode b = BoundaryMode::frozen_exterior(1)) {
    return Config(w, h, 2, b, s);
}

}  // namespace

TEST_CASE("internal spanning") {
    const Config a = grid({"10", "01"});
    CHECK(is_internally_spanned(a, full(a), SpanVariant::Modified));
    CHECK(is_internally_spanned(a, full(a), SpanVariant::Standard));
    const Config b = grid({"010"});
    CHECK_FALSE(is_internally_spanned(b, full(b), SpanVariant::Standard));
    CHECK_FALSE(is_internally_spanned(b, full(b), SpanVariant::Modified));
    for (int n = 1; n <= 16; ++n) {
        Config d(n, n, 2, BoundaryMode::frozen_exterior(0));
        for (int i = 0; i < n; ++i) d.set(i, i, 1);
        CHECK(is_internally_spanned(d, full(d), SpanVariant::Standard));
        CHECK(is_internally_spanned(d, full(d), SpanVariant::Modified));
    }
    SUBCASE("outside 1s do not help") {
        const Config c = grid({"1000", "0100"});
        RegionMask region(4, 2);
        region.set_rect({1, 0, 3, 1});
        CHECK_FALSE(is_internally_spanned(c, region, SpanVariant::Standard));
    }
    SUBCASE("the variants differ on an L of 1s") {
        const Config c = grid({"110", "000", "000"});
        RegionMask region(3, 3);
        region.set_rect({0, 0, 1, 1});
        CHECK(is_internally_spanned(grid({"11", "10"}), full(grid({"11", "10"})), SpanVariant::Standard));
        CHECK_FALSE(is_internally_spanned(c, region, SpanVariant::Modified));
        CHECK_FALSE(is_internally_spanned(c, region, SpanVariant::Standard));
    }
    CHECK_THROWS_AS(is_internally_spanned(a, RegionMask(2, 2), SpanVariant::Standard), Error);
}

TEST_CASE("al witness") {
    SUBCASE("diagonal of 2s, j = 2") {
        Config c = filled(4, 4, 1);
        for (int i = 0; i < 4; ++i) c.set(i, i, 2);
        const auto r = al_witness(c, 2);
        REQUIRE(r.has_value());
        CHECK(r->width() == 2);
        CHECK(r->height() == 2);
        CHECK(r->x0 == r->y0);
        CHECK(fills(c, *r));
    }
    SUBCASE("no 2s") {
        const Config c = filled(6, 5, 1);
        for (int j = 1; j <= 8; ++j) CHECK_FALSE(al_witness(c, j).has_value());
    }
    SUBCASE("0s are rejected") {
        CHECK_THROWS_AS(al_witness(grid({"120"}), 1), Error);
        CHECK_THROWS_AS(al_witness(grid({"12"}), 0), Error);
    }
    SUBCASE("witnesses are filled rectangles of the right size") {
        FixtureRng rng(77);
        for (int t = 0; t < 60; ++t) {
            Config c = filled(12, 12, 1);
            for (auto& s : c.cells()) s = rng.bernoulli(0.12) ? 2 : 1;
            for (int j = 1; j <= 12; ++j) {
                const auto r = al_witness(c, j);
                if (!r) continue;
                CHECK(2 * r->long_side() >= j);
                CHECK(r->long_side() <= j);
                CHECK(fills(c, *r));
            }
        }
    }
}

TEST_CASE("blocking zeros") {
    auto sites = [](const RegionMask& m) {
        std::vector<Site> out;
        for (int y = 0; y < m.height(); ++y)
            for (int x = 0; x < m.width(); ++x)
                if (m.contains(x, y)) out.push_back({x, y});
        return out;
    };
    CHECK(sites(blocking_zeros(grid({"202"}))) == std::vector<Site>{{1, 0}});
    CHECK(sites(blocking_zeros(grid({"2002"}))) == std::vector<Site>{{1, 0}, {2, 0}});
    CHECK(sites(blocking_zeros(grid({"201"}))).empty());
    CHECK(sites(blocking_zeros(grid({"022"}))).empty());
    CHECK(sites(blocking_zeros(grid({"202", "212"}))) == std::vector<Site>{{1, 0}});

    SUBCASE("blocking 0s survive the modified dynamics") {
        FixtureRng rng(13);
        const RuleTable modified = make_rule("modified");
        for (int t = 0; t < 30; ++t) {
            const Config c = testing::random_pq(rng, 30, 20, 0.5, 0.25, BoundaryMode::frozen_exterior(t % 3));
            const RegionMask blocking = blocking_zeros(c);
            const Config fin = run_frontier(c, modified);
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (blocking.test(i)) CHECK(fin.cells()[i] == 0);
            }
        }
    }
}

TEST_CASE("frames") {
    SUBCASE("too few 2s") {
        Config c = filled(10, 10, 1);
        c.set(0, 0, 2);
        c.set(9, 9, 2);
        CHECK(find_frames(c, {0, 0, 9, 9}).empty());
    }
    SUBCASE("hand-built 6x6") {
        Config c = filled(6, 6, 1);
        c.set(2, 0, 2);
        c.set(0, 3, 2);
        c.set(5, 2, 2);
        c.set(3, 5, 2);
        CHECK(frame_by_definition(c, {0, 0, 5, 5}, FrameMetric::Linf));
        for (auto metric : {FrameMetric::Linf, FrameMetric::L1}) {
            CHECK(find_frames(c, {0, 0, 5, 5}, metric) == std::vector<Rect>{{0, 0, 5, 5}});
        }
        CHECK(first_frame(c, {0, 0, 5, 5}, 6, 6) == Rect{0, 0, 5, 5});
        CHECK_FALSE(first_frame(c, {0, 0, 5, 5}, 5, 6).has_value());
        c.set(5, 2, 1);
        c.set(4, 2, 2);
        CHECK(find_frames(c, {0, 0, 5, 5}) == std::vector<Rect>{{0, 0, 4, 5}});
        c.set(3, 5, 1);
        CHECK(find_frames(c, {0, 0, 5, 5}).empty());
    }
    SUBCASE("all-2 10x10 block") {
        const Config c = filled(10, 10, 2);
        const auto frames = find_frames(c, {0, 0, 9, 9});
        CHECK(std::find(frames.begin(), frames.end(), Rect{0, 0, 5, 5}) != frames.end());
        std::size_t naive = 0;
        for (int y0 = 0; y0 < 10; ++y0)
            for (int x0 = 0; x0 < 10; ++x0)
                for (int y1 = y0; y1 < 10; ++y1)
                    for (int x1 = x0; x1 < 10; ++x1) naive += frame_by_definition(c, {x0, y0, x1, y1}, FrameMetric::Linf);
        CHECK(frames.size() == naive);
        CHECK(naive > 100);
    }
    SUBCASE("frames must lie in the region") {
        const Config c = filled(10, 10, 2);
        for (const Rect& r : find_frames(c, {2, 1, 8, 7})) CHECK(Rect{2, 1, 8, 7}.contains(r));
    }
}

TEST_CASE("crossable p-boxes") {
    const Rect box{4, 4, 7, 7};
    Config c = filled(12, 12, 1);
    CHECK(p_box_crossable(c, box, CrossVariant::WithHalo));
    CHECK(p_box_crossable(c, box, CrossVariant::NoExternal2));

    SUBCASE("a column of 0s") {
        for (int y = 4; y <= 7; ++y) c.set(5, y, 0);
        CHECK_FALSE(p_box_crossable(c, box, CrossVariant::WithHalo));
        CHECK_FALSE(p_box_crossable(c, box, CrossVariant::NoExternal2));
    }
    SUBCASE("a 2 on the external boundary") {
        c.set(8, 5, 2);
        CHECK_FALSE(p_box_crossable(c, box, CrossVariant::WithHalo));
        CHECK_FALSE(p_box_crossable(c, box, CrossVariant::NoExternal2));
    }
    SUBCASE("a 2 in the halo beyond the boundary") {
        c.set(10, 1, 2);
        CHECK_FALSE(p_box_crossable(c, box, CrossVariant::WithHalo));
        CHECK(p_box_crossable(c, box, CrossVariant::NoExternal2));
    }
    SUBCASE("a 0 on a diagonal keeps rows and columns covered") {
        for (int i = 0; i < 4; ++i) c.set(4 + i, 4 + i, 0);
        CHECK(p_box_crossable(c, box, CrossVariant::NoExternal2));
    }
    CHECK_THROWS_AS(p_box_crossable(c, {1, 1, 4, 4}, CrossVariant::WithHalo), Error);
    CHECK_THROWS_AS(p_box_crossable(c, {10, 10, 13, 13}, CrossVariant::NoExternal2), Error);
}

TEST_CASE("fillable q-boxes") {
    const FillableFixture fx = make_fillable_fixture();
    const FillabilityReport ok = q_box_fillable(fx.config, fx.qbox, fx.geom, fx.diam_limit);
    CHECK(ok.f1);
    CHECK(ok.f2);
    CHECK(ok.f3);
    CHECK(ok.f4);
    REQUIRE(ok.circuit_witness.has_value());
    CHECK(verify_circuit(fx.config, fx.qbox, fx.geom, *ok.circuit_witness));
    CHECK(format_report(ok).starts_with("F1=1 F2=1 F3=1 F4=1"));

    const Rect center = center_box(fx.qbox, fx.geom);
    CHECK(center.width() == fx.geom.center_side);
    CHECK(center.x0 - fx.qbox.x0 == fx.qbox.x1 - center.x1);

    SUBCASE("a 6x6 block of 2s breaks F3") {
        Config c = fx.config;
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 6; ++x) c.set(fx.qbox.x0 + 1 + x, fx.qbox.y0 + 1 + y, 2);
        const FillabilityReport r = q_box_fillable(c, fx.qbox, fx.geom, fx.diam_limit);
        CHECK_FALSE(r.f3);
        CHECK((r.frame_witness.has_value() || r.dense_square.has_value()));
    }
    SUBCASE("a center row of 0s breaks F4") {
        Config c = fx.config;
        for (int x = center.x0; x <= center.x1; ++x) c.set(x, center.y0 + 3, 0);
        const FillabilityReport r = q_box_fillable(c, fx.qbox, fx.geom, fx.diam_limit);
        CHECK_FALSE(r.f4);
        REQUIRE(r.f4_witness.has_value());
    }
    SUBCASE("2s everywhere outside the center box break F1") {
        Config c = fx.config;
        for (int y = fx.qbox.y0; y <= fx.qbox.y1; y += 2)
            for (int x = fx.qbox.x0; x <= fx.qbox.x1; x += 2)
                if (!center.contains(x, y)) c.set(x, y, 2);
        const FillabilityReport r = q_box_fillable(c, fx.qbox, fx.geom, fx.diam_limit);
        CHECK_FALSE(r.f1);
        CHECK_FALSE(r.circuit_witness.has_value());
    }
    SUBCASE("tiling mismatch") {
        BoxGeometry g = fx.geom;
        g.pbox_side = 5;
        CHECK_THROWS_AS(q_box_fillable(fx.config, fx.qbox, g, fx.diam_limit), Error);
    }
}

TEST_CASE("geometry from densities") {
    const BoxGeometry g = BoxGeometry::from_densities(0.1, 0.01, 3, 5);
    CHECK(g.pbox_side == 2 * static_cast<int>(std::floor(10 * std::log(10.0))));
    CHECK(g.pbox_side == 46);
    CHECK(g.center_side == 920);
    CHECK(g.qbox_side == 1840);
    CHECK(g.cross_arm == 1000);
    CHECK(g.cross_halfwidth == 4);
    CHECK(g.segment_len == 6);
    CHECK(g.rescale == 101);
    CHECK(g.frame_window == 318);
    CHECK(g.helpful_half() == 50);
    CHECK_THROWS_AS(BoxGeometry::from_densities(0, 0.1, 1, 1), Error);
}

TEST_CASE("protected regions") {
    // Z is the rectangle x in [2,6], y in [2,4] of a 9x7 lattice of 1s.
    Config c = filled(9, 7, 1);
    RegionMask zone(9, 7);
    zone.set_rect({2, 2, 6, 4});
    for (int y : {2, 4}) {
        for (int x = 1; x <= 7; ++x) c.set(x, y, 0);
        c.set(0, y, 2);
        c.set(8, y, 2);
    }
    for (int x = 2; x <= 6; ++x) c.set(x, 3, 0);
    const RuleTable modified = make_rule("modified");

    CHECK(nbrs_outside(c, zone, {2, 2}) == 2);
    CHECK(nbrs_outside(c, zone, {4, 3}) == 0);
    CHECK(nbrs_outside(c, zone, {2, 3}) == 1);

    const ProtectionReport good = protected_region_report(c, zone, 1, modified);
    CHECK(good.pr1);
    CHECK(good.pr2);
    CHECK(good.pr3);

    SUBCASE("corner without a blocking 0") {
        c.set(8, 2, 1);
        const ProtectionReport r = protected_region_report(c, zone, 1, modified);
        CHECK_FALSE(r.pr1);
        CHECK(r.pr1_witness == Site{2, 2});
    }
    SUBCASE("a 2 next to the boundary of Z") {
        c.set(3, 3, 2);
        const ProtectionReport r = protected_region_report(c, zone, 1, modified);
        CHECK_FALSE(r.pr2);
        CHECK(r.pr2_witness == Site{3, 3});
    }
    SUBCASE("a lone interior 2 keeps PR3") {
        c.set(4, 3, 2);
        CHECK(protected_region_report(c, zone, 2, modified).pr3);
    }
    SUBCASE("a growing 2-cluster breaks PR3") {
        c.set(2, 3, 2);
        c.set(4, 3, 2);
        c.set(6, 3, 2);
        const ProtectionReport r = protected_region_report(c, zone, 2, modified);
        CHECK_FALSE(r.pr3);
        CHECK(r.pr3_witness.has_value());
    }
    CHECK_THROWS_AS(protected_region_report(c, RegionMask(9, 7), 1, modified), Error);
}

TEST_CASE("shells") {
    SUBCASE("exact circle of radius 8") {
        const ShellReport r = shell_report(l1_circle(8), 8);
        CHECK(r.sh1);
        CHECK(r.sh2);
        CHECK(r.sh3);
        CHECK(r.sh4);
        CHECK(r.diagonal_reach == std::array<int, 4>{4, 4, 4, 4});
        CHECK(l1_circle(8).size() == 32);
    }
    SUBCASE("missing axis vertex") {
        auto s = l1_circle(8);
        s.erase(std::find(s.begin(), s.end(), Site{8, 0}));
        const ShellReport r = shell_report(s, 8);
        CHECK_FALSE(r.sh1);
        CHECK(r.sh1_witness == Site{8, 0});
    }
    SUBCASE("vertex beyond the l-infinity bound") {
        auto s = l1_circle(8);
        s.push_back({9, 1});
        const ShellReport r = shell_report(s, 8);
        CHECK_FALSE(r.sh2);
        CHECK(r.sh2_witness == Site{9, 1});
    }
    SUBCASE("circles for r in [4, 32]") {
        for (int r = 4; r <= 32; ++r) {
            const ShellReport rep = shell_report(l1_circle(r), r);
            CHECK(rep.sh1);
            CHECK(rep.sh2);
            CHECK(rep.sh4);
            // Diagonal points k(1,1) lie on the circle only when r is even.
            CHECK(rep.sh3 == (r % 2 == 0));
        }
    }
    SUBCASE("protection needs both squares") {
        const std::vector<Site> s{{3, 4}, {6, 2}};
        CHECK(protected_by(s, {4, 3}));
        CHECK_FALSE(protected_by({{3, 4}}, {4, 3}));
        CHECK_FALSE(protected_by(s, {0, 3}));
    }
}

TEST_CASE("supportive vertices and helpful boxes") {
    const BoxGeometry geom;
    Config c = filled(30, 30, 1);
    c.set(15, 15, 2);
    c.set(16, 15, 0);
    c.set(17, 15, 2);
    CHECK(is_supportive(c, {15, 15}, geom));
    CHECK_FALSE(is_supportive(c, {17, 15}, geom));
    CHECK_FALSE(is_supportive(c, {16, 15}, geom));

    SUBCASE("adjacent 2 is too close") {
        c.set(16, 15, 2);
        CHECK_FALSE(is_supportive(c, {15, 15}, geom));
    }
    SUBCASE("a 1 between the 2s") {
        c.set(16, 15, 1);
        CHECK_FALSE(is_supportive(c, {15, 15}, geom));
    }
    SUBCASE("stray 2 in the cross") {
        c.set(15, 18, 2);
        CHECK_FALSE(is_supportive(c, {15, 15}, geom));
    }
    SUBCASE("stray 2 outside the cross") {
        c.set(20, 20, 2);
        CHECK(is_supportive(c, {15, 15}, geom));
    }
    CHECK_THROWS_AS(is_supportive(c, {3, 15}, geom), Error);

    SUBCASE("helpful boxes") {
        BoxGeometry g;
        g.cross_arm = 4;
        g.rescale = 31;
        CHECK(g.helpful_half() == 15);
        const int need = g.m() + g.k() + 4;
        CHECK(need == 7);
        auto with_pair = [&](int x) {
            Config d = filled(80, 80, 1);
            d.set(x, 40, 2);
            d.set(x + 1, 40, 0);
            d.set(x + 2, 40, 2);
            return d;
        };
        CHECK(rescaled_box({0, 0}, g, {40, 40}) == Rect{25, 25, 55, 55});
        CHECK(is_helpful_box(with_pair(40), {0, 0}, g, {40, 40}));
        CHECK(is_helpful_box(with_pair(25 + need), {0, 0}, g, {40, 40}));
        CHECK_FALSE(is_helpful_box(with_pair(25 + need - 1), {0, 0}, g, {40, 40}));
        CHECK_FALSE(is_helpful_box(filled(80, 80, 1), {0, 0}, g, {40, 40}));
        CHECK_THROWS_AS(is_helpful_box(with_pair(40), {2, 0}, g, {40, 40}), Error);
    }
}

TEST_CASE("helpful boxes become more frequent with k") {
    const int side = 303;
    std::vector<int> counts;
    for (int k : {1, 4, 8}) {
        BoxGeometry g;
        g.cross_arm = 10;
        g.cross_halfwidth = 2;
        g.segment_len = k + 1;
        g.rescale = 101;
        int helpful = 0;
        for (std::uint64_t t = 0; t < 20; ++t) {
            const Config c = sample_product(InitSpec::two_stage(side, side, 0.0, 0.01), {2024, t});
            for (int uy = 0; uy < 3; ++uy)
                for (int ux = 0; ux < 3; ++ux) helpful += is_helpful_box(c, {ux, uy}, g, {50, 50});
        }
        counts.push_back(helpful);
    }
    CHECK(counts[0] < counts[1]);
    CHECK(counts[1] < counts[2]);
}
