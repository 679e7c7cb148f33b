#include "twostage/validation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "twostage/engine.hpp"

namespace twostage {

namespace {

constexpr std::uint64_t kCheckSalt = 0x6a09e667f3bcc909ULL;

FixtureRng trial_rng(std::uint64_t seed, long long trial) {
    return FixtureRng(mix64(seed ^ kCheckSalt) ^ mix64(static_cast<std::uint64_t>(trial) + 1));
}

void fail(CheckOutcome& out, const std::string& what) {
    if (out.failures == 0) out.detail = what;
    ++out.failures;
}

CheckOutcome finish(CheckOutcome out) {
    out.passed = out.failures == 0;
    return out;
}

std::string rect_str(const Rect& r) {
    return "[" + std::to_string(r.x0) + "," + std::to_string(r.y0) + "," + std::to_string(r.x1) + "," +
           std::to_string(r.y1) + "]";
}

RegionMask full_mask(const Config& c) { return RegionMask(c.width(), c.height(), true); }

RegionMask rect_mask(const Config& c, const Rect& r) {
    RegionMask m(c.width(), c.height(), false);
    m.set_rect(r);
    return m;
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"al", "elim", "restrict", "blocking", "frames", "shell", "fillable"};
    return names;
}

CheckParams default_check_params(const std::string& name) {
    CheckParams p;
    if (name == "al") {
        p.trials = 200;
        p.size = 30;
        p.q = 0.1;
    } else if (name == "elim") {
        p.trials = 500;
        p.size = 20;
    } else if (name == "restrict") {
        p.trials = 50;
        p.size = 48;
        p.m = 6;
        p.max_attempts = 10'000;
    } else if (name == "blocking") {
        p.trials = 500;
        p.size = 100;
        p.p = 0.25;
        p.q = 0.3;
    } else if (name == "frames") {
        p.trials = 40;
        p.size = 10;
        p.q = 0.3;
    } else if (name == "shell") {
        p.trials = 1;
        p.size = 32;
    } else if (name == "fillable") {
        p.trials = 200;
        p.size = 24;
        p.p = 0.8;
        p.q = 0.01;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown check '" + name + "'");
    }
    return p;
}

CheckOutcome run_check(const std::string& name, const CheckParams& params) {
    if (params.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
    if (params.size < 1) throw Error(ErrorCode::InvalidArgument, "size must be positive");
    if (name == "al") return check_al(params);
    if (name == "elim") return check_elim(params);
    if (name == "restrict") return check_restrict(params);
    if (name == "blocking") return check_blocking(params);
    if (name == "frames") return check_frames(params);
    if (name == "shell") return check_shell(params);
    if (name == "fillable") return check_fillable(params);
    throw Error(ErrorCode::InvalidArgument, "unknown check '" + name + "'");
}

std::string format_outcome(const std::string& name, const CheckOutcome& o) {
    std::string out = "check=" + name + " passed=" + std::to_string(o.passed ? 1 : 0) + " cases=" +
                      std::to_string(o.cases) + " failures=" + std::to_string(o.failures) +
                      " starved=" + std::to_string(o.starved);
    if (!o.detail.empty()) out += " first_failure=\"" + o.detail + "\"";
    return out;
}

// ---------------------------------------------------------------------------

CheckOutcome check_al(const CheckParams& params) {
    CheckOutcome out;
    const RuleTable standard = make_rule("standard");
    for (int t = 0; t < params.trials; ++t) {
        const InitSpec spec{params.size, params.size, 2, {0.0, 1.0 - params.q, params.q},
                            BoundaryMode::frozen_exterior(1)};
        const Config config = sample_product(spec, SeedSpec{params.seed, static_cast<std::uint64_t>(t)});
        const Config closure = run_internal(config, full_mask(config), standard, false).final;

        std::map<std::pair<int, int>, bool> verified;  // witness rectangles already run
        for (const Component& comp : components(closure, 2)) {
            ++out.cases;
            if (!comp.is_rectangle) {
                fail(out, "trial " + std::to_string(t) + ": closure component is not a rectangle");
                continue;
            }
            for (int j = 1; j <= comp.bbox.long_side(); ++j) {
                ++out.cases;
                const auto w = al_witness(config, j);
                if (!w) {
                    fail(out, "trial " + std::to_string(t) + ": no witness for j=" + std::to_string(j));
                    continue;
                }
                if (2 * w->long_side() < j || w->long_side() > j) {
                    fail(out, "trial " + std::to_string(t) + ": witness " + rect_str(*w) + " outside [j/2,j]");
                    continue;
                }
                const auto key = std::make_pair(w->y0 * params.size + w->x0, w->y1 * params.size + w->x1);
                if (verified.count(key) == 0) {
                    const Config inner = run_internal(config, rect_mask(config, *w), standard, false).final;
                    bool filled = true;
                    for (int y = w->y0; y <= w->y1; ++y)
                        for (int x = w->x0; x <= w->x1; ++x) filled = filled && inner.cells()[inner.index(x, y)] == 2;
                    verified[key] = filled;
                }
                if (!verified[key]) fail(out, "trial " + std::to_string(t) + ": witness " + rect_str(*w) + " not filled");
            }
        }
    }
    return finish(out);
}

// ---------------------------------------------------------------------------

bool elimination_hypotheses(const Config& config) {
    const Rect all{0, 0, config.width() - 1, config.height() - 1};
    if (first_frame(config, all, config.width(), config.height())) return false;
    for (int y0 = -4; y0 < config.height(); ++y0) {
        for (int x0 = -4; x0 < config.width(); ++x0) {
            int twos = 0;
            for (int y = std::max(0, y0); y <= std::min(config.height() - 1, y0 + 4); ++y)
                for (int x = std::max(0, x0); x <= std::min(config.width() - 1, x0 + 4); ++x)
                    twos += config.cells()[config.index(x, y)] == 2;
            if (twos > 2) return false;
        }
    }
    return true;
}

std::optional<Config> make_elim_fixture(FixtureRng& rng, int min_side, int max_side, long long max_attempts,
                                        long long* attempts_used) {
    if (min_side < 1 || max_side < min_side) throw Error(ErrorCode::InvalidArgument, "bad side range");
    const int w = rng.uniform_int(min_side, max_side);
    const int h = rng.uniform_int(min_side, max_side);
    const double p1 = 0.15 + 0.5 * rng.unit();
    const double q2 = 0.005 + 0.045 * rng.unit();

    Config config(w, h, 2, BoundaryMode::frozen_exterior(1));
    std::vector<State> background(config.size());
    for (auto& s : background) s = rng.bernoulli(p1) ? 1 : 0;

    for (long long attempt = 1; attempt <= max_attempts; ++attempt) {
        auto cells = config.cells();
        for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = rng.bernoulli(q2) ? State{2} : background[i];
        if (elimination_hypotheses(config)) {
            if (attempts_used) *attempts_used = attempt;
            return config;
        }
    }
    if (attempts_used) *attempts_used = max_attempts;
    return std::nullopt;
}

CheckOutcome check_elim(const CheckParams& params) {
    CheckOutcome out;
    const RuleTable standard = make_rule("standard");
    const int max_side = std::max(5, params.size);
    for (int t = 0; t < params.trials; ++t) {
        FixtureRng rng = trial_rng(params.seed, t);
        const auto fixture = make_elim_fixture(rng, 5, max_side, params.max_attempts);
        if (!fixture) {
            ++out.starved;
            continue;
        }
        ++out.cases;
        const long long area = static_cast<long long>(fixture->size());
        const RunReport run = run_with_snapshots(*fixture, standard, {area});
        if (run.snapshots.front().config.count(0) != 0) {
            fail(out, "fixture " + std::to_string(t) + ": a 0 survives " + std::to_string(area) + " steps");
        }
    }
    return finish(out);
}

// ---------------------------------------------------------------------------

ProtectedFixture make_protected_fixture(FixtureRng& rng, int size, int m) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    const int c = size / 2;
    const int lo = m + 2;
    const int hi = size / 2 - 4;
    if (hi < lo + 2) throw Error(ErrorCode::Geometry, "lattice too small for a protected fixture with this m");

    // Centered rectangles: widths increase while heights decrease.
    const int count = rng.uniform_int(1, 3);
    std::vector<int> hx, hy;
    {
        std::vector<int> xs, ys;
        for (int v = lo; v <= hi; ++v) {
            xs.push_back(v);
            ys.push_back(v);
        }
        for (std::size_t i = xs.size(); i > 1; --i) {
            std::swap(xs[i - 1], xs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
            std::swap(ys[i - 1], ys[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
        }
        const int k = std::min<int>(count, static_cast<int>(xs.size()));
        hx.assign(xs.begin(), xs.begin() + k);
        hy.assign(ys.begin(), ys.begin() + k);
        std::sort(hx.begin(), hx.end());
        std::sort(hy.rbegin(), hy.rend());
    }

    Config config(size, size, 2, BoundaryMode::torus());
    RegionMask zone(size, size, false);
    for (std::size_t i = 0; i < hx.size(); ++i) zone.set_rect({c - hx[i], c - hy[i], c + hx[i], c + hy[i]});

    const double q_core = 0.005 + 0.025 * rng.unit();
    const double p_band = 0.3 + 0.4 * rng.unit();
    auto cells = config.cells();

    // Distance (l-infinity) from each zone site to the nearest boundary site of the zone.
    std::vector<char> boundary(config.size(), 0);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            if (zone.contains(x, y) && nbrs_outside(config, zone, {x, y}) > 0) boundary[config.index(x, y)] = 1;

    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const std::size_t i = config.index(x, y);
            if (!zone.contains(x, y)) {
                const double u = rng.unit();
                cells[i] = u < 0.4 ? 2 : (u < 0.7 ? 1 : 0);
                continue;
            }
            bool near = false;
            for (int dy = -m; dy <= m && !near; ++dy)
                for (int dx = -m; dx <= m && !near; ++dx) {
                    const int vx = ((x + dx) % size + size) % size;
                    const int vy = ((y + dy) % size + size) % size;
                    near = boundary[config.index(vx, vy)] != 0;
                }
            if (near) {
                cells[i] = rng.bernoulli(p_band) ? 1 : 0;
            } else {
                cells[i] = rng.bernoulli(q_core) ? 2 : (rng.bernoulli(p_band) ? 1 : 0);
            }
        }
    }

    // "2 0 2" just outside every convex corner, in the row beyond it.
    for (std::size_t i = 0; i < hx.size(); ++i) {
        for (int sx : {-1, 1}) {
            for (int sy : {-1, 1}) {
                const int x = c + sx * hx[i];
                const int y = c + sy * (hy[i] + 1);
                cells[config.index(x - 1, y)] = 2;
                cells[config.index(x, y)] = 0;
                cells[config.index(x + 1, y)] = 2;
            }
        }
    }
    return ProtectedFixture{std::move(config), std::move(zone), m};
}

std::optional<ProtectedFixture> make_valid_protected_fixture(FixtureRng& rng, int size, int m, long long max_attempts) {
    const RuleTable modified = make_rule("modified");
    for (long long a = 0; a < max_attempts; ++a) {
        ProtectedFixture f = make_protected_fixture(rng, size, m);
        if (protected_region_report(f.config, f.zone, f.m, modified).all()) return f;
    }
    return std::nullopt;
}

std::optional<long long> restriction_violation(const ProtectedFixture& fixture) {
    const RuleTable modified = make_rule("modified");
    Config inner_start(2, fixture.zone);
    {
        const auto src = fixture.config.cells();
        auto dst = inner_start.cells();
        for (std::size_t i = 0; i < src.size(); ++i)
            if (fixture.zone.test(i)) dst[i] = src[i] == 0 ? State{1} : src[i];
    }
    Stepper full(fixture.config, modified);
    Stepper inner(inner_start, modified);

    long long t = 0;
    while (true) {
        const auto a = full.current().cells();
        const auto b = inner.current().cells();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (fixture.zone.test(i) && a[i] == 2 && b[i] != 2) return t;
        }
        const bool moved_full = full.advance();
        const bool moved_inner = inner.advance();
        if (!moved_full && !moved_inner) return std::nullopt;
        ++t;
    }
}

CheckOutcome check_restrict(const CheckParams& params) {
    CheckOutcome out;
    for (int t = 0; t < params.trials; ++t) {
        FixtureRng rng = trial_rng(params.seed, t);
        const auto fixture = make_valid_protected_fixture(rng, params.size, params.m, params.max_attempts);
        if (!fixture) {
            ++out.starved;
            continue;
        }
        ++out.cases;
        if (const auto when = restriction_violation(*fixture)) {
            fail(out, "fixture " + std::to_string(t) + ": domination fails at t=" + std::to_string(*when));
        }
    }
    return finish(out);
}

// ---------------------------------------------------------------------------

Config make_blocking_fixture(int width, int height, double p, double q, std::uint64_t seed) {
    Config config = sample_product(InitSpec::two_stage(width, height, p, q, BoundaryMode::torus()), SeedSpec{seed, 0});
    FixtureRng rng(mix64(seed ^ 0xb10c));
    const int planted = std::max(1, height / 4);
    for (int k = 0; k < planted && width >= 3; ++k) {
        const int y = rng.uniform_int(0, height - 1);
        const int gap = rng.uniform_int(1, std::max(1, std::min(4, width - 2)));
        const int x = rng.uniform_int(0, width - gap - 2);
        config.set(x, y, 2);
        for (int i = 1; i <= gap; ++i) config.set(x + i, y, 0);
        config.set(x + gap + 1, y, 2);
    }
    return config;
}

CheckOutcome check_blocking(const CheckParams& params) {
    CheckOutcome out;
    const RuleTable modified = make_rule("modified");
    for (int t = 0; t < params.trials; ++t) {
        const Config initial = sample_product(InitSpec::two_stage(params.size, params.size, params.p, params.q),
                                              SeedSpec{params.seed, static_cast<std::uint64_t>(t)});
        const Config final = run_frontier(initial, modified);
        const RegionMask blocking = blocking_zeros(initial);
        const int w = initial.width();
        for (int y = 0; y < initial.height(); ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t i = initial.index(x, y);
                if (initial.cells()[i] != 0) continue;
                const bool flanked = initial.cells()[initial.index((x + w - 1) % w, y)] == 2 &&
                                     initial.cells()[initial.index((x + 1) % w, y)] == 2;
                if (flanked || blocking.test(i)) {
                    ++out.cases;
                    if (final.cells()[i] != 0) {
                        fail(out, "trial " + std::to_string(t) + ": site (" + std::to_string(x) + "," +
                                      std::to_string(y) + ") left state 0");
                    }
                }
            }
        }
    }
    return finish(out);
}

// ---------------------------------------------------------------------------

bool frame_by_definition(const Config& config, const Rect& r, FrameMetric metric) {
    if (r.width() < 6 && r.height() < 6) return false;
    struct Side {
        int ax, ay, bx, by;  // segment endpoints
    };
    const Side sides[4] = {{r.x0, r.y0, r.x1, r.y0}, {r.x0, r.y1, r.x1, r.y1}, {r.x0, r.y0, r.x0, r.y1}, {r.x1, r.y0, r.x1, r.y1}};
    std::vector<Site> twos;
    for (int y = r.y0; y <= r.y1; ++y)
        for (int x = r.x0; x <= r.x1; ++x)
            if (config.in_domain(x, y) && config.cells()[config.index(x, y)] == 2) twos.push_back({x, y});

    for (const Side& s : sides) {
        auto distance = [&](Site v) {
            int best = 1 << 30;
            for (int y = s.ay; y <= s.by; ++y) {
                for (int x = s.ax; x <= s.bx; ++x) {
                    const int dx = std::abs(v.x - x);
                    const int dy = std::abs(v.y - y);
                    best = std::min(best, metric == FrameMetric::Linf ? std::max(dx, dy) : dx + dy);
                }
            }
            return best;
        };
        bool ok = false;
        for (const Site& on : twos) {
            if (distance(on) != 0) continue;
            for (const Site& extra : twos) {
                if (!(extra == on) && distance(extra) <= 2) ok = true;
            }
        }
        if (!ok) return false;
    }
    return true;
}

CheckOutcome check_frames(const CheckParams& params) {
    CheckOutcome out;
    for (int t = 0; t < params.trials; ++t) {
        FixtureRng rng = trial_rng(params.seed, t);
        const int w = rng.uniform_int(1, params.size);
        const int h = rng.uniform_int(1, params.size);
        const double q = params.q * rng.unit();
        Config config(w, h, 2, BoundaryMode::frozen_exterior(0));
        for (auto& s : config.cells()) s = rng.bernoulli(q) ? 2 : static_cast<State>(rng.uniform_int(0, 1));
        const Rect region{0, 0, w - 1, h - 1};
        for (FrameMetric metric : {FrameMetric::Linf, FrameMetric::L1}) {
            std::vector<Rect> naive;
            for (int y0 = 0; y0 < h; ++y0)
                for (int x0 = 0; x0 < w; ++x0)
                    for (int y1 = y0; y1 < h; ++y1)
                        for (int x1 = x0; x1 < w; ++x1)
                            if (frame_by_definition(config, {x0, y0, x1, y1}, metric)) naive.push_back({x0, y0, x1, y1});
            ++out.cases;
            if (naive != find_frames(config, region, metric)) {
                fail(out, "trial " + std::to_string(t) + ": frame lists differ");
            }
        }
    }
    return finish(out);
}

// ---------------------------------------------------------------------------

CheckOutcome check_shell(const CheckParams& params) {
    CheckOutcome out;
    for (int r = 4; r <= std::max(4, params.size); ++r) {
        std::vector<Site> circle = l1_circle(r);
        const ShellReport exact = shell_report(circle, r);
        ++out.cases;
        const bool expected_sh3 = r % 2 == 0;
        if (!exact.sh1 || !exact.sh2 || !exact.sh4 || exact.sh3 != expected_sh3) {
            fail(out, "r=" + std::to_string(r) + ": exact circle gives " + format_report(exact));
        }
        if (r % 2 == 1) {
            const int c = (r + 1) / 2;
            for (int sx : {-1, 1})
                for (int sy : {-1, 1}) circle.push_back({sx * c, sy * c});
        }
        const ShellReport completed = shell_report(circle, r);
        ++out.cases;
        if (!completed.all()) fail(out, "r=" + std::to_string(r) + ": completed circle gives " + format_report(completed));
    }
    return finish(out);
}

// ---------------------------------------------------------------------------

bool verify_circuit(const Config& config, const Rect& qbox, const BoxGeometry& geom,
                    const std::vector<TileIndex>& tiles, TileAdjacency circuit) {
    if (tiles.empty()) return false;
    const int n = geom.qbox_side / geom.pbox_side;
    const int ps = geom.pbox_side;
    std::vector<char> wall(static_cast<std::size_t>(n) * n, 0);
    for (const auto& t : tiles) {
        if (t.x < 0 || t.y < 0 || t.x >= n || t.y >= n) return false;
        const Rect tile{qbox.x0 + t.x * ps, qbox.y0 + t.y * ps, qbox.x0 + t.x * ps + ps - 1, qbox.y0 + t.y * ps + ps - 1};
        if (!p_box_crossable(config, tile, CrossVariant::NoExternal2)) return false;
        wall[static_cast<std::size_t>(t.y) * n + t.x] = 1;
    }
    const Rect center = center_box(qbox, geom);
    const int dirs = circuit == TileAdjacency::Four ? 8 : 4;
    static const int dx[8] = {-1, 1, 0, 0, -1, -1, 1, 1};
    static const int dy[8] = {0, 0, -1, 1, -1, 1, -1, 1};

    std::vector<char> seen(wall.size(), 0);
    std::deque<TileIndex> queue;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            if ((x == 0 || y == 0 || x == n - 1 || y == n - 1) && !wall[static_cast<std::size_t>(y) * n + x]) {
                seen[static_cast<std::size_t>(y) * n + x] = 1;
                queue.push_back({x, y});
            }
    while (!queue.empty()) {
        const TileIndex t = queue.front();
        queue.pop_front();
        const Rect tile{qbox.x0 + t.x * ps, qbox.y0 + t.y * ps, qbox.x0 + t.x * ps + ps - 1, qbox.y0 + t.y * ps + ps - 1};
        if (tile.x0 <= center.x1 && center.x0 <= tile.x1 && tile.y0 <= center.y1 && center.y0 <= tile.y1) return false;
        for (int d = 0; d < dirs; ++d) {
            const int nx = t.x + dx[d];
            const int ny = t.y + dy[d];
            if (nx < 0 || ny < 0 || nx >= n || ny >= n) continue;
            const std::size_t k = static_cast<std::size_t>(ny) * n + nx;
            if (seen[k] || wall[k]) continue;
            seen[k] = 1;
            queue.push_back({nx, ny});
        }
    }
    return true;
}

FillableFixture make_fillable_fixture() {
    BoxGeometry geom;
    geom.pbox_side = 4;
    geom.center_side = 16;
    geom.qbox_side = 32;
    geom.frame_window = 6;
    const int side = 3 * geom.qbox_side;
    const Rect qbox{geom.qbox_side, geom.qbox_side, 2 * geom.qbox_side - 1, 2 * geom.qbox_side - 1};
    const Rect center = center_box(qbox, geom);

    // Row of the 2 in each center column. Found by a backtracking search over
    // permutations with at most two points per 5x5 square and no frame that
    // fits in a 6x6 square.
    static constexpr int rows[16] = {3, 2, 12, 9, 7, 4, 14, 13, 0, 5, 8, 1, 15, 11, 6, 10};
    Config config(side, side, 2, BoundaryMode::frozen_exterior(1), 1);
    for (int i = 0; i < geom.center_side; ++i) config.set(center.x0 + i, center.y0 + rows[i], 2);
    return FillableFixture{std::move(config), qbox, geom, 6};
}

CheckOutcome check_fillable(const CheckParams& params) {
    CheckOutcome out;
    const FillableFixture fixture = make_fillable_fixture();
    const FillabilityReport built = q_box_fillable(fixture.config, fixture.qbox, fixture.geom, fixture.diam_limit);
    ++out.cases;
    if (!built.all()) fail(out, "built fixture: " + format_report(built));

    BoxGeometry geom = fixture.geom;
    const int qs = geom.qbox_side;
    for (int t = 0; t < params.trials; ++t) {
        FixtureRng rng = trial_rng(params.seed, t);
        Config config(3 * qs, 3 * qs, 2, BoundaryMode::frozen_exterior(1));
        const double p1 = params.p * (0.5 + 0.5 * rng.unit());
        const double q2 = params.q * rng.unit();
        for (auto& s : config.cells()) {
            const double u = rng.unit();
            s = u < q2 ? 2 : (u < q2 + p1 ? 1 : 0);
        }
        const Rect qbox{qs, qs, 2 * qs - 1, 2 * qs - 1};
        for (TileAdjacency adj : {TileAdjacency::Four, TileAdjacency::Eight}) {
            const FillabilityReport r = q_box_fillable(config, qbox, geom, fixture.diam_limit, adj);
            ++out.cases;
            if (r.f1 != r.circuit_witness.has_value() || (r.f1 && !verify_circuit(config, qbox, geom, *r.circuit_witness, adj))) {
                fail(out, "trial " + std::to_string(t) + ": circuit witness does not verify");
            }
            if (!r.f1 && r.f2) fail(out, "trial " + std::to_string(t) + ": F2 without a circuit");
        }
    }
    return finish(out);
}

}  // namespace twostage
