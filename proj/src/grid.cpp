#include "twostage/grid.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>

namespace twostage {

BoundaryMode parse_boundary(std::string_view text) {
    if (text == "torus") return BoundaryMode::torus();
    if (text == "masked") return BoundaryMode::masked();
    if (text.size() == 8 && text.substr(0, 7) == "frozen:" && text[7] >= '0' && text[7] <= '9') {
        return BoundaryMode::frozen_exterior(static_cast<State>(text[7] - '0'));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown boundary '" + std::string(text) + "'");
}

std::string to_string(const BoundaryMode& b) {
    switch (b.kind) {
        case BoundaryKind::Torus: return "torus";
        case BoundaryKind::Masked: return "masked";
        case BoundaryKind::FrozenExterior: return "frozen:" + std::to_string(int(b.frozen));
    }
    return "torus";
}

// ---------------------------------------------------------------------------

RegionMask::RegionMask(int width, int height, bool fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw Error(ErrorCode::InvalidArgument, "mask dimensions must be positive");
    bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

void RegionMask::set(int x, int y, bool on) {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) {
        throw Error(ErrorCode::Coordinate, "mask site out of range");
    }
    bits_[static_cast<std::size_t>(y) * width_ + x] = on ? 1 : 0;
}

void RegionMask::set_rect(const Rect& r, bool on) {
    for (int y = r.y0; y <= r.y1; ++y)
        for (int x = r.x0; x <= r.x1; ++x) set(x, y, on);
}

std::size_t RegionMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

// ---------------------------------------------------------------------------

namespace {

void check_shape(int width, int height, int kappa) {
    if (width <= 0 || height <= 0) throw Error(ErrorCode::InvalidArgument, "lattice dimensions must be positive");
    if (kappa < 1 || kappa > kMaxKappa) {
        throw Error(ErrorCode::InvalidArgument, "kappa must lie in [1, " + std::to_string(kMaxKappa) + "]");
    }
}

}  // namespace

Config::Config(int width, int height, int kappa, BoundaryMode boundary, State fill)
    : width_(width), height_(height), kappa_(kappa), boundary_(boundary) {
    check_shape(width, height, kappa);
    if (fill > kappa) throw Error(ErrorCode::InvalidArgument, "fill state exceeds kappa");
    if (boundary.kind == BoundaryKind::FrozenExterior && boundary.frozen > kappa) {
        throw Error(ErrorCode::InvalidArgument, "frozen exterior state exceeds kappa");
    }
    cells_.assign(static_cast<std::size_t>(width) * height, fill);
    if (boundary.kind == BoundaryKind::Masked) mask_ = RegionMask(width, height, true);
}

Config::Config(int kappa, RegionMask mask, State fill)
    : width_(mask.width()), height_(mask.height()), kappa_(kappa), boundary_(BoundaryMode::masked()) {
    check_shape(width_, height_, kappa);
    if (fill > kappa) throw Error(ErrorCode::InvalidArgument, "fill state exceeds kappa");
    if (mask.empty()) throw Error(ErrorCode::Domain, "masked config needs a nonempty mask");
    cells_.assign(static_cast<std::size_t>(width_) * height_, 0);
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (mask.test(i)) cells_[i] = fill;
    mask_ = std::move(mask);
}

State Config::at(int x, int y) const {
    if (!in_lattice(x, y)) throw Error(ErrorCode::Coordinate, "site out of range");
    if (mask_ && !mask_->contains(x, y)) throw Error(ErrorCode::Domain, "site outside mask");
    return cells_[index(x, y)];
}

void Config::set(int x, int y, State s) {
    if (!in_lattice(x, y)) throw Error(ErrorCode::Coordinate, "site out of range");
    if (mask_ && !mask_->contains(x, y)) throw Error(ErrorCode::Domain, "site outside mask");
    if (s > kappa_) throw Error(ErrorCode::InvalidArgument, "state exceeds kappa");
    cells_[index(x, y)] = s;
}

std::size_t Config::count(State s) const noexcept {
    std::size_t n = 0;
    for (std::size_t i = 0; i < cells_.size(); ++i) n += (cells_[i] == s && in_domain(i));
    return n;
}

std::size_t Config::domain_size() const noexcept { return mask_ ? mask_->count() : cells_.size(); }

// ---------------------------------------------------------------------------

Topology::Topology(const Config& config) : table_(config.size()) {
    const int w = config.width();
    const int h = config.height();
    const auto kind = config.boundary().kind;
    frozen_ = config.boundary().frozen;

    auto resolve = [&](int x, int y) -> std::int32_t {
        if (kind == BoundaryKind::Torus) {
            x = (x % w + w) % w;
            y = (y % h + h) % h;
            return static_cast<std::int32_t>(config.index(x, y));
        }
        if (!config.in_lattice(x, y)) return kind == BoundaryKind::FrozenExterior ? kFrozen : kAbsent;
        if (!config.in_domain(x, y)) return kAbsent;
        return static_cast<std::int32_t>(config.index(x, y));
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            auto& row = table_[config.index(x, y)];
            row[West] = resolve(x - 1, y);
            row[East] = resolve(x + 1, y);
            row[North] = resolve(x, y - 1);
            row[South] = resolve(x, y + 1);
        }
    }
}

NeighborStats neighbor_stats(const Config& config, Site x, State s) {
    if (!config.in_lattice(x.x, x.y)) throw Error(ErrorCode::Coordinate, "site out of range");
    if (!config.in_domain(x.x, x.y)) throw Error(ErrorCode::Domain, "site outside mask");
    const int w = config.width();
    const int h = config.height();
    const auto& b = config.boundary();

    auto state_of = [&](int nx, int ny) -> int {
        if (b.kind == BoundaryKind::Torus) {
            nx = (nx % w + w) % w;
            ny = (ny % h + h) % h;
            return config.cells()[config.index(nx, ny)];
        }
        if (!config.in_lattice(nx, ny)) return b.kind == BoundaryKind::FrozenExterior ? b.frozen : -1;
        if (!config.in_domain(nx, ny)) return -1;
        return config.cells()[config.index(nx, ny)];
    };

    const std::array<int, 4> nb{state_of(x.x - 1, x.y), state_of(x.x + 1, x.y), state_of(x.x, x.y - 1),
                                state_of(x.x, x.y + 1)};
    return stats_from(nb, s);
}

// ---------------------------------------------------------------------------

std::vector<Component> components(const Config& config, State s) {
    const int w = config.width();
    const int h = config.height();
    const bool torus = config.boundary().kind == BoundaryKind::Torus;
    const auto cells = config.cells();

    constexpr int kUnseen = std::numeric_limits<int>::min();
    // Lifted (unwrapped) coordinates per visited site.
    std::vector<int> lift_x(cells.size(), kUnseen);
    std::vector<int> lift_y(cells.size(), 0);

    std::vector<Component> out;
    std::deque<std::size_t> queue;
    static constexpr int dx[4] = {-1, 1, 0, 0};
    static constexpr int dy[4] = {0, 0, -1, 1};

    for (std::size_t start = 0; start < cells.size(); ++start) {
        if (cells[start] != s || !config.in_domain(start) || lift_x[start] != kUnseen) continue;

        Component comp;
        const Site origin = config.site(start);
        lift_x[start] = origin.x;
        lift_y[start] = origin.y;
        queue.push_back(start);
        int min_x = origin.x, max_x = origin.x, min_y = origin.y, max_y = origin.y;

        while (!queue.empty()) {
            const std::size_t cur = queue.front();
            queue.pop_front();
            comp.sites.push_back(config.site(cur));
            const int lx = lift_x[cur];
            const int ly = lift_y[cur];
            const Site here = config.site(cur);
            for (int d = 0; d < 4; ++d) {
                int nx = here.x + dx[d];
                int ny = here.y + dy[d];
                if (torus) {
                    nx = (nx % w + w) % w;
                    ny = (ny % h + h) % h;
                } else if (!config.in_domain(nx, ny)) {
                    continue;
                }
                const std::size_t ni = config.index(nx, ny);
                if (cells[ni] != s) continue;
                const int nlx = lx + dx[d];
                const int nly = ly + dy[d];
                if (lift_x[ni] == kUnseen) {
                    lift_x[ni] = nlx;
                    lift_y[ni] = nly;
                    min_x = std::min(min_x, nlx);
                    max_x = std::max(max_x, nlx);
                    min_y = std::min(min_y, nly);
                    max_y = std::max(max_y, nly);
                    queue.push_back(ni);
                } else if (lift_x[ni] != nlx || lift_y[ni] != nly) {
                    comp.wraps = true;
                }
            }
        }

        std::sort(comp.sites.begin(), comp.sites.end(),
                  [](const Site& a, const Site& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
        comp.bbox = Rect{min_x, min_y, max_x, max_y};
        if (comp.wraps) {
            comp.diameter = Component::kUnbounded;
            comp.is_rectangle = false;
        } else {
            comp.diameter = std::max(max_x - min_x, max_y - min_y);
            comp.is_rectangle = static_cast<long long>(comp.sites.size()) == comp.bbox.area();
        }
        out.push_back(std::move(comp));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

int parse_int(std::string_view tok, int line, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
        throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    }
    return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

}  // namespace

Config parse_config(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header");

    std::vector<std::string_view> tok;
    {
        std::string_view header = lines[0];
        std::size_t pos = 0;
        while (pos < header.size()) {
            std::size_t sp = header.find(' ', pos);
            if (sp == std::string_view::npos) sp = header.size();
            if (sp > pos) tok.push_back(header.substr(pos, sp - pos));
            pos = sp + 1;
        }
    }
    if (tok.size() != 4) throw ParseError(1, "header must be 'W H KAPPA BOUNDARY'");
    const int w = parse_int(tok[0], 1, "width");
    const int h = parse_int(tok[1], 1, "height");
    const int kappa = parse_int(tok[2], 1, "kappa");
    if (w <= 0 || h <= 0) throw ParseError(1, "dimensions must be positive");
    if (kappa < 1 || kappa > kMaxKappa) throw ParseError(1, "kappa out of range");
    BoundaryMode boundary;
    try {
        boundary = parse_boundary(tok[3]);
    } catch (const Error& e) {
        throw ParseError(1, e.what());
    }
    if (boundary.kind == BoundaryKind::FrozenExterior && boundary.frozen > kappa) {
        throw ParseError(1, "frozen state exceeds kappa");
    }

    if (static_cast<int>(lines.size()) - 1 < h) {
        throw ParseError(static_cast<int>(lines.size()) + 1, "expected " + std::to_string(h) + " rows");
    }
    for (std::size_t i = static_cast<std::size_t>(h) + 1; i < lines.size(); ++i) {
        if (!lines[i].empty()) throw ParseError(static_cast<int>(i) + 1, "trailing content after last row");
    }

    std::vector<State> cells(static_cast<std::size_t>(w) * h, 0);
    RegionMask mask(w, h, true);
    bool any_dot = false;
    for (int y = 0; y < h; ++y) {
        const std::string_view row = lines[static_cast<std::size_t>(y) + 1];
        const int line = y + 2;
        if (static_cast<int>(row.size()) != w) {
            throw ParseError(line, "row has " + std::to_string(row.size()) + " sites, expected " + std::to_string(w));
        }
        for (int x = 0; x < w; ++x) {
            const char c = row[static_cast<std::size_t>(x)];
            if (c == '.') {
                if (boundary.kind != BoundaryKind::Masked) throw ParseError(line, "'.' requires masked boundary");
                mask.set(x, y, false);
                any_dot = true;
            } else if (c >= '0' && c <= '9') {
                if (c - '0' > kappa) throw ParseError(line, std::string("state '") + c + "' exceeds kappa");
                cells[static_cast<std::size_t>(y) * w + x] = static_cast<State>(c - '0');
            } else {
                throw ParseError(line, std::string("unexpected character '") + c + "'");
            }
        }
    }

    if (boundary.kind == BoundaryKind::Masked) {
        if (any_dot && mask.empty()) throw ParseError(2, "mask is empty");
        Config cfg(kappa, mask);
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (mask.test(i)) cfg.cells()[i] = cells[i];
        return cfg;
    }
    Config cfg(w, h, kappa, boundary);
    std::copy(cells.begin(), cells.end(), cfg.cells().begin());
    return cfg;
}

std::string serialize_config(const Config& config) {
    std::string out = std::to_string(config.width()) + ' ' + std::to_string(config.height()) + ' ' +
                      std::to_string(config.kappa()) + ' ' + to_string(config.boundary()) + '\n';
    out.reserve(out.size() + config.size() + config.height());
    const auto cells = config.cells();
    for (int y = 0; y < config.height(); ++y) {
        for (int x = 0; x < config.width(); ++x) {
            const std::size_t i = config.index(x, y);
            out.push_back(config.in_domain(i) ? static_cast<char>('0' + cells[i]) : '.');
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace twostage
