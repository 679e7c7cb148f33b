#include "twostage/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>

#include "twostage/engine.hpp"

namespace twostage {

namespace {

// State seen at (x, y) after applying the boundary mode; -1 when absent.
int state_at(const Config& c, int x, int y) {
    if (c.boundary().kind == BoundaryKind::Torus) {
        x = ((x % c.width()) + c.width()) % c.width();
        y = ((y % c.height()) + c.height()) % c.height();
        return c.cells()[c.index(x, y)];
    }
    if (!c.in_lattice(x, y)) {
        return c.boundary().kind == BoundaryKind::FrozenExterior ? c.boundary().frozen : -1;
    }
    if (!c.in_domain(x, y)) return -1;
    return c.cells()[c.index(x, y)];
}

void require_inside(const Config& c, const Rect& r, const char* what) {
    if (r.x0 > r.x1 || r.y0 > r.y1) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is empty");
    if (!c.in_lattice(r.x0, r.y0) || !c.in_lattice(r.x1, r.y1)) {
        throw Error(ErrorCode::Coordinate, std::string(what) + " leaves the lattice");
    }
}

// Inclusive-rectangle counts of 2s over the lattice.
class TwoCounts {
  public:
    explicit TwoCounts(const Config& c) : w_(c.width()), sums_((c.width() + 1) * (c.height() + 1), 0) {
        for (int y = 0; y < c.height(); ++y) {
            for (int x = 0; x < c.width(); ++x) {
                const std::size_t i = c.index(x, y);
                const int v = (c.in_domain(i) && c.cells()[i] == 2) ? 1 : 0;
                at(x + 1, y + 1) = v + at(x, y + 1) + at(x + 1, y) - at(x, y);
            }
        }
    }

    int count(int x0, int y0, int x1, int y1) const {
        if (x0 > x1 || y0 > y1) return 0;
        return at(x1 + 1, y1 + 1) - at(x0, y1 + 1) - at(x1 + 1, y0) + at(x0, y0);
    }

  private:
    int& at(int x, int y) { return sums_[static_cast<std::size_t>(y) * (w_ + 1) + x]; }
    int at(int x, int y) const { return sums_[static_cast<std::size_t>(y) * (w_ + 1) + x]; }

    int w_;
    std::vector<int> sums_;
};

// Inside the rectangle the l1 and l-infinity distances to a side coincide
// (the nearest point of the side is straight across), so both metrics give
// the band of the three lines next to that side.
bool is_frame(const TwoCounts& t, int x0, int y0, int x1, int y1) {
    if (x1 - x0 + 1 < 6 && y1 - y0 + 1 < 6) return false;
    if (t.count(x0, y0, x1, y0) < 1 || t.count(x0, y0, x1, std::min(y0 + 2, y1)) < 2) return false;
    if (t.count(x0, y1, x1, y1) < 1 || t.count(x0, std::max(y1 - 2, y0), x1, y1) < 2) return false;
    if (t.count(x0, y0, x0, y1) < 1 || t.count(x0, y0, std::min(x0 + 2, x1), y1) < 2) return false;
    if (t.count(x1, y0, x1, y1) < 1 || t.count(std::max(x1 - 2, x0), y0, x1, y1) < 2) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------

BoxGeometry BoxGeometry::from_densities(double p, double q, int m, int k) {
    if (!(p > 0 && p < 1) || !(q > 0 && q < 1)) throw Error(ErrorCode::InvalidArgument, "densities must lie in (0,1)");
    if (m < 1 || k < 1) throw Error(ErrorCode::InvalidArgument, "m and k must be positive");
    const double lp = (1.0 / p) * std::log(1.0 / p);
    const double lq = (1.0 / q) * std::log(1.0 / q);
    const int inv_q = static_cast<int>(std::floor(1.0 / q));
    BoxGeometry g;
    g.pbox_side = std::max(1, 2 * static_cast<int>(std::floor(lp)));
    g.center_side = std::max(2, 2 * static_cast<int>(std::floor(lq)));
    g.qbox_side = 2 * g.center_side;
    g.cross_arm = 10 * inv_q;
    g.cross_halfwidth = m + 1;
    g.segment_len = k + 1;
    g.rescale = inv_q + 1;
    g.frame_window = std::max(1, 3 * static_cast<int>(std::floor(lp * std::log(1.0 / q))));
    return g;
}

// ---------------------------------------------------------------------------

bool is_internally_spanned(const Config& config, const RegionMask& region, SpanVariant variant) {
    if (config.kappa() != 2) throw Error(ErrorCode::Contract, "internal spanning needs kappa 2");
    const RuleTable rule =
        make_rule(variant == SpanVariant::Standard ? "polluted-standard" : "polluted-modified", 2);
    const RunReport run = run_internal(config, region, rule, false);
    const auto cells = run.final.cells();
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (region.test(i) && cells[i] != 1) return false;
    return true;
}

// ---------------------------------------------------------------------------

MergeHistory rectangle_merges(const Config& config) {
    MergeHistory out;
    std::vector<Rect> rects;
    std::vector<char> active;
    for (int y = 0; y < config.height(); ++y) {
        for (int x = 0; x < config.width(); ++x) {
            if (config.in_domain(x, y) && config.cells()[config.index(x, y)] == 2) {
                rects.push_back({x, y, x, y});
                active.push_back(1);
                out.created.push_back({x, y, x, y});
            }
        }
    }

    auto gap = [](const Rect& a, const Rect& b) {
        const int dx = std::max(0, std::max(a.x0, b.x0) - std::min(a.x1, b.x1));
        const int dy = std::max(0, std::max(a.y0, b.y0) - std::min(a.y1, b.y1));
        return dx + dy;
    };

    std::deque<std::size_t> work;
    for (std::size_t i = 0; i < rects.size(); ++i) work.push_back(i);
    while (!work.empty()) {
        const std::size_t i = work.front();
        work.pop_front();
        if (!active[i]) continue;
        for (std::size_t k = 0; k < rects.size(); ++k) {
            if (k == i || !active[k] || gap(rects[i], rects[k]) > 2) continue;
            const Rect merged{std::min(rects[i].x0, rects[k].x0), std::min(rects[i].y0, rects[k].y0),
                              std::max(rects[i].x1, rects[k].x1), std::max(rects[i].y1, rects[k].y1)};
            active[i] = active[k] = 0;
            rects.push_back(merged);
            active.push_back(1);
            out.created.push_back(merged);
            work.push_back(rects.size() - 1);
            break;
        }
    }
    for (std::size_t i = 0; i < rects.size(); ++i)
        if (active[i]) out.closure.push_back(rects[i]);
    std::sort(out.closure.begin(), out.closure.end(),
              [](const Rect& a, const Rect& b) { return a.y0 != b.y0 ? a.y0 < b.y0 : a.x0 < b.x0; });
    return out;
}

std::optional<Rect> al_witness(const Config& config, int j) {
    if (j < 1) throw Error(ErrorCode::InvalidArgument, "j must be positive");
    if (config.kappa() != 2) throw Error(ErrorCode::Contract, "al_witness needs kappa 2");
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (config.in_domain(i) && config.cells()[i] == 0) {
            throw Error(ErrorCode::InvalidArgument, "al_witness needs a config of 1s and 2s");
        }
    }
    // long in [j/2, j] means 2*long >= j and long <= j. The longest such
    // rectangle is returned, the earliest created among equals.
    std::optional<Rect> best;
    for (const Rect& r : rectangle_merges(config).created) {
        if (2 * r.long_side() >= j && r.long_side() <= j && (!best || r.long_side() > best->long_side())) best = r;
    }
    return best;
}

// ---------------------------------------------------------------------------

RegionMask blocking_zeros(const Config& config) {
    const int w = config.width();
    RegionMask out(w, config.height(), false);
    const bool torus = config.boundary().kind == BoundaryKind::Torus;

    for (int y = 0; y < config.height(); ++y) {
        auto state = [&](int x) { return state_at(config, x, y); };
        int anchor = 0;  // a position where a run of 0s cannot start mid-way
        if (torus) {
            anchor = -1;
            for (int x = 0; x < w; ++x) {
                if (state(x) != 0) {
                    anchor = x;
                    break;
                }
            }
            if (anchor < 0) continue;
        }
        const int begin = torus ? anchor + 1 : 0;
        const int end = torus ? anchor + w : w;  // exclusive
        int x = begin;
        while (x < end) {
            if (state(x) != 0) {
                ++x;
                continue;
            }
            int run_end = x;
            while (run_end + 1 < end && state(run_end + 1) == 0) ++run_end;
            if (state(x - 1) == 2 && state(run_end + 1) == 2) {
                for (int k = x; k <= run_end; ++k) out.set(((k % w) + w) % w, y);
            }
            x = run_end + 1;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Rect> find_frames(const Config& config, const Rect& region, FrameMetric) {
    require_inside(config, region, "region");
    const TwoCounts t(config);
    std::vector<Rect> out;
    if (t.count(region.x0, region.y0, region.x1, region.y1) < 3) return out;
    for (int y0 = region.y0; y0 <= region.y1; ++y0)
        for (int x0 = region.x0; x0 <= region.x1; ++x0)
            for (int y1 = y0; y1 <= region.y1; ++y1)
                for (int x1 = x0; x1 <= region.x1; ++x1)
                    if (is_frame(t, x0, y0, x1, y1)) out.push_back({x0, y0, x1, y1});
    return out;
}

std::optional<Rect> first_frame(const Config& config, const Rect& region, int max_w, int max_h, FrameMetric) {
    require_inside(config, region, "region");
    const TwoCounts t(config);
    if (t.count(region.x0, region.y0, region.x1, region.y1) < 3) return std::nullopt;
    for (int y0 = region.y0; y0 <= region.y1; ++y0)
        for (int x0 = region.x0; x0 <= region.x1; ++x0)
            for (int y1 = y0; y1 <= std::min(region.y1, y0 + max_h - 1); ++y1)
                for (int x1 = x0; x1 <= std::min(region.x1, x0 + max_w - 1); ++x1)
                    if (is_frame(t, x0, y0, x1, y1)) return Rect{x0, y0, x1, y1};
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

bool rows_and_columns_hold_a_one(const Config& c, const Rect& box) {
    for (int y = box.y0; y <= box.y1; ++y) {
        bool found = false;
        for (int x = box.x0; x <= box.x1 && !found; ++x) found = state_at(c, x, y) == 1;
        if (!found) return false;
    }
    for (int x = box.x0; x <= box.x1; ++x) {
        bool found = false;
        for (int y = box.y0; y <= box.y1 && !found; ++y) found = state_at(c, x, y) == 1;
        if (!found) return false;
    }
    return true;
}

bool holds_a_two(const Config& c, const Rect& r) {
    for (int y = r.y0; y <= r.y1; ++y)
        for (int x = r.x0; x <= r.x1; ++x)
            if (state_at(c, x, y) == 2) return true;
    return false;
}

}  // namespace

bool p_box_crossable(const Config& config, const Rect& box, CrossVariant variant) {
    require_inside(config, box, "p-box");
    if (variant == CrossVariant::WithHalo) {
        const Rect halo{box.x0 - box.width(), box.y0 - box.height(), box.x1 + box.width(), box.y1 + box.height()};
        if (!config.in_lattice(halo.x0, halo.y0) || !config.in_lattice(halo.x1, halo.y1)) {
            throw Error(ErrorCode::Geometry, "the eight surrounding p-boxes leave the lattice");
        }
        return rows_and_columns_hold_a_one(config, box) && !holds_a_two(config, halo);
    }
    if (holds_a_two(config, box)) return false;
    for (int x = box.x0; x <= box.x1; ++x) {
        if (state_at(config, x, box.y0 - 1) == 2 || state_at(config, x, box.y1 + 1) == 2) return false;
    }
    for (int y = box.y0; y <= box.y1; ++y) {
        if (state_at(config, box.x0 - 1, y) == 2 || state_at(config, box.x1 + 1, y) == 2) return false;
    }
    return rows_and_columns_hold_a_one(config, box);
}

// ---------------------------------------------------------------------------

Rect center_box(const Rect& qbox, const BoxGeometry& geom) {
    const int off = geom.center_side / 2;
    return {qbox.x0 + off, qbox.y0 + off, qbox.x0 + off + geom.center_side - 1, qbox.y0 + off + geom.center_side - 1};
}

namespace {

struct TileGrid {
    int n;
    std::vector<char> flag;
    char& at(int x, int y) { return flag[static_cast<std::size_t>(y) * n + x]; }
    char at(int x, int y) const { return flag[static_cast<std::size_t>(y) * n + x]; }
};

const int kDx8[8] = {-1, 1, 0, 0, -1, -1, 1, 1};
const int kDy8[8] = {0, 0, -1, 1, -1, 1, -1, 1};

// Flood fill over tiles where `allowed` holds, from every seed with `seeded`.
TileGrid flood(int n, int dirs, const std::vector<TileIndex>& seeds, const auto& allowed) {
    TileGrid seen{n, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
    std::deque<TileIndex> queue;
    for (const auto& s : seeds) {
        if (allowed(s.x, s.y) && !seen.at(s.x, s.y)) {
            seen.at(s.x, s.y) = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const TileIndex t = queue.front();
        queue.pop_front();
        for (int d = 0; d < dirs; ++d) {
            const int nx = t.x + kDx8[d];
            const int ny = t.y + kDy8[d];
            if (nx < 0 || ny < 0 || nx >= n || ny >= n || seen.at(nx, ny) || !allowed(nx, ny)) continue;
            seen.at(nx, ny) = 1;
            queue.push_back({nx, ny});
        }
    }
    return seen;
}

std::vector<TileIndex> border_tiles(int n) {
    std::vector<TileIndex> out;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            if (x == 0 || y == 0 || x == n - 1 || y == n - 1) out.push_back({x, y});
    return out;
}

}  // namespace

FillabilityReport q_box_fillable(const Config& config, const Rect& qbox, const BoxGeometry& geom, int diam_limit,
                                 TileAdjacency circuit) {
    require_inside(config, qbox, "q-box");
    if (geom.pbox_side < 1 || geom.center_side < 2) throw Error(ErrorCode::Geometry, "box sides must be positive");
    if (geom.qbox_side != 2 * geom.center_side) throw Error(ErrorCode::Geometry, "q-box side must be twice the center box");
    if (geom.center_side % 2 != 0) throw Error(ErrorCode::Geometry, "center box side must be even");
    if (qbox.width() != geom.qbox_side || qbox.height() != geom.qbox_side) {
        throw Error(ErrorCode::Geometry, "q-box does not match the geometry");
    }
    if (geom.qbox_side % geom.pbox_side != 0) throw Error(ErrorCode::Geometry, "p-boxes do not tile the q-box");
    if (diam_limit < 0) throw Error(ErrorCode::InvalidArgument, "diameter limit must be non-negative");

    FillabilityReport report;
    const int n = geom.qbox_side / geom.pbox_side;
    const int ps = geom.pbox_side;
    const Rect center = center_box(qbox, geom);
    const int circuit_dirs = circuit == TileAdjacency::Four ? 4 : 8;
    const int dual_dirs = circuit == TileAdjacency::Four ? 8 : 4;

    TileGrid crossable{n, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
    TileGrid is_center{n, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
    std::vector<TileIndex> center_tiles;
    for (int ty = 0; ty < n; ++ty) {
        for (int tx = 0; tx < n; ++tx) {
            const Rect tile{qbox.x0 + tx * ps, qbox.y0 + ty * ps, qbox.x0 + tx * ps + ps - 1, qbox.y0 + ty * ps + ps - 1};
            crossable.at(tx, ty) = p_box_crossable(config, tile, CrossVariant::NoExternal2);
            const bool meets = tile.x0 <= center.x1 && center.x0 <= tile.x1 && tile.y0 <= center.y1 && center.y0 <= tile.y1;
            if (meets) {
                is_center.at(tx, ty) = 1;
                center_tiles.push_back({tx, ty});
            }
        }
    }

    // (F1): the blocked cluster around the center box must stay off the q-box border.
    auto blocked = [&](int x, int y) { return !crossable.at(x, y) || is_center.at(x, y); };
    const TileGrid cluster = flood(n, dual_dirs, center_tiles, blocked);
    bool touches = false;
    for (const auto& b : border_tiles(n)) touches = touches || cluster.at(b.x, b.y);

    std::vector<TileIndex> wall;
    TileGrid in_wall{n, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
    if (!touches) {
        const TileGrid outside = flood(n, circuit_dirs, border_tiles(n), [&](int x, int y) { return !cluster.at(x, y); });
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                if (!outside.at(x, y)) continue;
                bool next_to_cluster = false;
                for (int d = 0; d < dual_dirs && !next_to_cluster; ++d) {
                    const int nx = x + kDx8[d];
                    const int ny = y + kDy8[d];
                    next_to_cluster = nx >= 0 && ny >= 0 && nx < n && ny < n && cluster.at(nx, ny);
                }
                if (next_to_cluster) {
                    wall.push_back({x, y});
                    in_wall.at(x, y) = 1;
                }
            }
        }
        // The wall must cut every dual path from the border to the center box.
        const TileGrid leak = flood(n, dual_dirs, border_tiles(n), [&](int x, int y) { return !in_wall.at(x, y); });
        bool separated = !wall.empty();
        for (const auto& c : center_tiles) separated = separated && !leak.at(c.x, c.y);
        for (const auto& t : wall) separated = separated && crossable.at(t.x, t.y);
        report.f1 = separated;
        if (separated) report.circuit_witness = wall;

        if (separated) {
            // (F2): tiles inside the wall that crossable paths from the wall do not reach.
            auto inside = [&](int x, int y) { return !leak.at(x, y) && !in_wall.at(x, y); };
            const TileGrid reached =
                flood(n, circuit_dirs, wall, [&](int x, int y) { return in_wall.at(x, y) || (inside(x, y) && crossable.at(x, y)); });
            TileGrid done{n, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
            report.f2 = true;
            for (int y = 0; y < n && report.f2; ++y) {
                for (int x = 0; x < n && report.f2; ++x) {
                    if (!inside(x, y) || reached.at(x, y) || done.at(x, y)) continue;
                    const TileGrid comp = flood(n, circuit_dirs, {{x, y}},
                                                [&](int a, int b) { return inside(a, b) && !reached.at(a, b); });
                    int x0 = n, x1 = -1, y0 = n, y1 = -1;
                    for (int b = 0; b < n; ++b) {
                        for (int a = 0; a < n; ++a) {
                            if (!comp.at(a, b)) continue;
                            done.at(a, b) = 1;
                            x0 = std::min(x0, a);
                            x1 = std::max(x1, a);
                            y0 = std::min(y0, b);
                            y1 = std::max(y1, b);
                        }
                    }
                    if (std::max(x1 - x0, y1 - y0) > diam_limit) {
                        report.f2 = false;
                        report.f2_witness = TileIndex{x, y};
                    }
                }
            }
        }
    }

    // (F3)
    report.frame_witness = first_frame(config, qbox, geom.frame_window, geom.frame_window);
    const TwoCounts twos(config);
    const int side5 = std::min(5, geom.qbox_side);
    for (int y = qbox.y0; y + side5 - 1 <= qbox.y1 && !report.dense_square; ++y) {
        for (int x = qbox.x0; x + side5 - 1 <= qbox.x1; ++x) {
            if (twos.count(x, y, x + side5 - 1, y + side5 - 1) > 2) {
                report.dense_square = Rect{x, y, x + side5 - 1, y + side5 - 1};
                break;
            }
        }
    }
    report.f3 = !report.frame_witness && !report.dense_square;

    // (F4)
    report.f4 = true;
    for (int y = center.y0; y <= center.y1 && report.f4; ++y) {
        if (twos.count(center.x0, y, center.x1, y) == 0) {
            report.f4 = false;
            report.f4_witness = Site{center.x0, y};
        }
    }
    for (int x = center.x0; x <= center.x1 && report.f4; ++x) {
        if (twos.count(x, center.y0, x, center.y1) == 0) {
            report.f4 = false;
            report.f4_witness = Site{x, center.y0};
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kDx4[4] = {-1, 1, 0, 0};
constexpr int kDy4[4] = {0, 0, -1, 1};

struct Neighbor {
    bool exists = false;     // a position of the dynamics (lattice site or frozen exterior)
    bool on_lattice = false;
    int x = 0;
    int y = 0;
};

Neighbor neighbor_of(const Config& c, Site u, int d) {
    int x = u.x + kDx4[d];
    int y = u.y + kDy4[d];
    if (c.boundary().kind == BoundaryKind::Torus) {
        x = ((x % c.width()) + c.width()) % c.width();
        y = ((y % c.height()) + c.height()) % c.height();
        return {true, true, x, y};
    }
    if (!c.in_lattice(x, y)) return {c.boundary().kind == BoundaryKind::FrozenExterior, false, x, y};
    if (!c.in_domain(x, y)) return {};
    return {true, true, x, y};
}

void check_zone(const Config& config, const RegionMask& zone) {
    if (zone.width() != config.width() || zone.height() != config.height()) {
        throw Error(ErrorCode::InvalidArgument, "region shape does not match the config");
    }
    if (zone.empty()) throw Error(ErrorCode::Domain, "region is empty");
}

}  // namespace

int nbrs_outside(const Config& config, const RegionMask& zone, Site u) {
    int count = 0;
    for (int d = 0; d < 4; ++d) {
        const Neighbor nb = neighbor_of(config, u, d);
        if (!nb.exists) continue;
        if (!nb.on_lattice || !zone.contains(nb.x, nb.y)) ++count;
    }
    return count;
}

ProtectionReport protected_region_report(const Config& config, const RegionMask& zone, int m, const RuleTable& rule) {
    check_zone(config, zone);
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    if (config.kappa() != 2) throw Error(ErrorCode::Contract, "protected regions need kappa 2");

    ProtectionReport report;
    report.pr1 = report.pr2 = true;
    const RegionMask blocking = blocking_zeros(config);
    const bool torus = config.boundary().kind == BoundaryKind::Torus;

    for (int y = 0; y < config.height(); ++y) {
        for (int x = 0; x < config.width(); ++x) {
            if (!zone.contains(x, y)) continue;
            if (!config.in_domain(x, y)) throw Error(ErrorCode::Domain, "region leaves the config's domain");
            const Site u{x, y};
            int outside = 0;
            int blocking_count = 0;
            for (int d = 0; d < 4; ++d) {
                const Neighbor nb = neighbor_of(config, u, d);
                if (!nb.exists) continue;
                if (nb.on_lattice && zone.contains(nb.x, nb.y)) continue;
                ++outside;
                if (nb.on_lattice && blocking.contains(nb.x, nb.y)) ++blocking_count;
            }
            if (report.pr1 && outside >= 2 && blocking_count < outside - 1) {
                report.pr1 = false;
                report.pr1_witness = u;
            }
            if (report.pr2 && outside >= 1) {
                for (int dy = -m; dy <= m && report.pr2; ++dy) {
                    for (int dx = -m; dx <= m; ++dx) {
                        int vx = x + dx;
                        int vy = y + dy;
                        if (torus) {
                            vx = ((vx % config.width()) + config.width()) % config.width();
                            vy = ((vy % config.height()) + config.height()) % config.height();
                        } else if (!config.in_lattice(vx, vy)) {
                            continue;
                        }
                        if (zone.contains(vx, vy) && config.cells()[config.index(vx, vy)] == 2) {
                            report.pr2 = false;
                            report.pr2_witness = Site{vx, vy};
                            break;
                        }
                    }
                }
            }
        }
    }

    const RunReport run = run_internal(config, zone, rule, true);
    report.pr3 = true;
    for (const Component& comp : components(run.final, 2)) {
        if (2 * comp.diameter > m) {
            report.pr3 = false;
            report.pr3_witness = comp.sites.front();
            break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

std::vector<Site> l1_circle(int r) {
    if (r < 0) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
    std::vector<Site> out;
    for (int x = -r; x <= r; ++x) {
        const int rest = r - std::abs(x);
        out.push_back({x, rest});
        if (rest != 0) out.push_back({x, -rest});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool square_meets(const std::vector<Site>& sorted, int x0, int x1, int y0, int y1) {
    for (int x = x0; x <= x1; ++x)
        for (int y = y0; y <= y1; ++y)
            if (std::binary_search(sorted.begin(), sorted.end(), Site{x, y})) return true;
    return false;
}

}  // namespace

bool protected_by(const std::vector<Site>& sorted_set, Site u) {
    if (u.x == 0 || u.y == 0) return false;
    if ((u.x > 0) == (u.y > 0)) {
        return square_meets(sorted_set, u.x - 2, u.x - 1, u.y + 1, u.y + 2) &&
               square_meets(sorted_set, u.x + 1, u.x + 2, u.y - 2, u.y - 1);
    }
    return square_meets(sorted_set, u.x - 2, u.x - 1, u.y - 2, u.y - 1) &&
           square_meets(sorted_set, u.x + 1, u.x + 2, u.y + 1, u.y + 2);
}

ShellReport shell_report(std::vector<Site> set, int r) {
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto contains = [&](Site s) { return std::binary_search(set.begin(), set.end(), s); };

    ShellReport report;
    report.radius = r;

    report.sh1 = true;
    for (const Site& u : l1_circle(r)) {
        if (std::max(std::abs(u.x), std::abs(u.y)) >= r - 3 && !contains(u)) {
            report.sh1 = false;
            report.sh1_witness = u;
            break;
        }
    }

    report.sh2 = true;
    const double upper = r + 2.0 * std::sqrt(static_cast<double>(r));
    for (const Site& u : set) {
        const int l1 = std::abs(u.x) + std::abs(u.y);
        const int linf = std::max(std::abs(u.x), std::abs(u.y));
        if (l1 < r || l1 > upper || linf > r) {
            report.sh2 = false;
            report.sh2_witness = u;
            break;
        }
    }

    constexpr int kPhi[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    report.sh3 = true;
    for (int f = 0; f < 4; ++f) {
        int best = 0;
        for (const Site& u : set) {
            if (u.x * kPhi[f][0] == u.y * kPhi[f][1] && u.x * kPhi[f][0] > 0) best = std::max(best, u.x * kPhi[f][0]);
        }
        report.diagonal_reach[f] = best;
        report.sh3 = report.sh3 && 2 * best >= r;
    }

    report.sh4 = true;
    for (const Site& u : set) {
        if (std::abs(u.x) >= 3 && std::abs(u.y) >= 3 && !protected_by(set, u)) {
            report.sh4 = false;
            report.sh4_witness = u;
            break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

bool is_supportive(const Config& config, Site x, const BoxGeometry& geom) {
    if (!config.in_lattice(x.x, x.y)) throw Error(ErrorCode::Coordinate, "site out of range");
    const int band = geom.cross_halfwidth;
    const int arm = geom.cross_arm;
    if (band < 1 || arm < band || geom.segment_len < 1) throw Error(ErrorCode::Geometry, "malformed cross");
    const bool torus = config.boundary().kind == BoundaryKind::Torus;
    if (!torus && (!config.in_lattice(x.x - arm, x.y - arm) || !config.in_lattice(x.x + arm, x.y + arm))) {
        throw Error(ErrorCode::Geometry, "cross leaves the lattice");
    }

    auto s = [&](int dx, int dy) { return state_at(config, x.x + dx, x.y + dy); };
    if (s(0, 0) != 2) return false;

    // (SV2): nearest non-0 to the right is a 2 at distance 2..k+1.
    int d = 1;
    while (d <= geom.segment_len && s(d, 0) == 0) ++d;
    if (d < 2 || d > geom.segment_len || s(d, 0) != 2) return false;

    // (SV3)
    for (int dy = -arm; dy <= arm; ++dy) {
        for (int dx = -arm; dx <= arm; ++dx) {
            const bool in_cross = (std::abs(dx) <= band) || (std::abs(dy) <= band);
            if (!in_cross) continue;
            if (dy == 0 && dx >= 0 && dx <= geom.segment_len) continue;
            if (s(dx, dy) == 2) return false;
        }
    }
    return true;
}

Rect rescaled_box(Site u, const BoxGeometry& geom, Site origin) {
    const int half = geom.helpful_half();
    const int cx = origin.x + geom.rescale * u.x;
    const int cy = origin.y + geom.rescale * u.y;
    return {cx - half, cy - half, cx + half, cy + half};
}

bool is_helpful_box(const Config& config, Site u, const BoxGeometry& geom, Site origin) {
    const Rect box = rescaled_box(u, geom, origin);
    if (!config.in_lattice(box.x0, box.y0) || !config.in_lattice(box.x1, box.y1)) {
        throw Error(ErrorCode::Geometry, "rescaled box leaves the lattice");
    }
    const int need = geom.m() + geom.k() + 4;
    for (int y = box.y0 + need; y <= box.y1 - need; ++y) {
        for (int x = box.x0 + need; x <= box.x1 - need; ++x) {
            if (config.cells()[config.index(x, y)] == 2 && is_supportive(config, {x, y}, geom)) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------

namespace {

std::string site_text(const std::optional<Site>& s) {
    if (!s) return "-";
    return "(" + std::to_string(s->x) + "," + std::to_string(s->y) + ")";
}

std::string rect_text(const std::optional<Rect>& r) {
    if (!r) return "-";
    return "[" + std::to_string(r->x0) + "," + std::to_string(r->y0) + "," + std::to_string(r->x1) + "," +
           std::to_string(r->y1) + "]";
}

}  // namespace

std::string format_report(const FillabilityReport& r) {
    std::string out = "F1=" + std::to_string(r.f1) + " F2=" + std::to_string(r.f2) + " F3=" + std::to_string(r.f3) +
                      " F4=" + std::to_string(r.f4);
    out += " circuit=";
    if (r.circuit_witness) {
        out += std::to_string(r.circuit_witness->size()) + ":";
        bool first = true;
        for (const auto& t : *r.circuit_witness) {
            out += (first ? "" : ";") + std::to_string(t.x) + "," + std::to_string(t.y);
            first = false;
        }
    } else {
        out += "-";
    }
    out += " f2_tile=" + (r.f2_witness ? "(" + std::to_string(r.f2_witness->x) + "," + std::to_string(r.f2_witness->y) + ")"
                                       : std::string("-"));
    out += " frame=" + rect_text(r.frame_witness);
    out += " dense5=" + rect_text(r.dense_square);
    out += " f4_site=" + site_text(r.f4_witness);
    return out;
}

std::string format_report(const ProtectionReport& r) {
    return "PR1=" + std::to_string(r.pr1) + " PR2=" + std::to_string(r.pr2) + " PR3=" + std::to_string(r.pr3) +
           " pr1_site=" + site_text(r.pr1_witness) + " pr2_site=" + site_text(r.pr2_witness) +
           " pr3_site=" + site_text(r.pr3_witness);
}

std::string format_report(const ShellReport& r) {
    std::string out = "SH1=" + std::to_string(r.sh1) + " SH2=" + std::to_string(r.sh2) + " SH3=" + std::to_string(r.sh3) +
                      " SH4=" + std::to_string(r.sh4) + " r=" + std::to_string(r.radius);
    out += " sh1_site=" + site_text(r.sh1_witness) + " sh2_site=" + site_text(r.sh2_witness) +
           " sh4_site=" + site_text(r.sh4_witness);
    out += " reach=" + std::to_string(r.diagonal_reach[0]) + "," + std::to_string(r.diagonal_reach[1]) + "," +
           std::to_string(r.diagonal_reach[2]) + "," + std::to_string(r.diagonal_reach[3]);
    return out;
}

}  // namespace twostage
