#pragma once

// Finite 2D lattices carrying one state per site.
//
// Sites are addressed as (column, row) with (0,0) in the top-left corner, the
// same orientation as the text format. Neighborhoods are the four nearest
// neighbors; how the lattice edge is treated is set by the BoundaryMode:
//
//   Torus              wraps in both directions. A lattice of width or height 1
//                      sees the same site twice in that direction.
//   FrozenExterior(f)  every off-lattice position holds state f forever.
//   Masked             only sites of the RegionMask exist; all other positions
//                      (including off-lattice ones) are absent. This is the
//                      internal dynamics on the masked set.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twostage/error.hpp"

namespace twostage {

using State = std::uint8_t;

/// Largest state the text format can carry (one digit per site).
inline constexpr int kMaxKappa = 9;

struct Site {
    int x = 0;
    int y = 0;

    friend bool operator==(const Site&, const Site&) = default;
    friend auto operator<=>(const Site&, const Site&) = default;
};

/// Inclusive rectangle of sites.
struct Rect {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    int width() const noexcept { return x1 - x0 + 1; }
    int height() const noexcept { return y1 - y0 + 1; }
    long long area() const noexcept { return static_cast<long long>(width()) * height(); }
    /// Length of the longest side.
    int long_side() const noexcept { return width() > height() ? width() : height(); }
    bool contains(int x, int y) const noexcept { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
    bool contains(const Rect& r) const noexcept {
        return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1;
    }

    friend bool operator==(const Rect&, const Rect&) = default;
    friend auto operator<=>(const Rect&, const Rect&) = default;
};

enum class BoundaryKind { Torus, FrozenExterior, Masked };

struct BoundaryMode {
    BoundaryKind kind = BoundaryKind::Torus;
    State frozen = 0;  // only meaningful for FrozenExterior

    static BoundaryMode torus() { return {BoundaryKind::Torus, 0}; }
    static BoundaryMode frozen_exterior(State s) { return {BoundaryKind::FrozenExterior, s}; }
    static BoundaryMode masked() { return {BoundaryKind::Masked, 0}; }

    friend bool operator==(const BoundaryMode& a, const BoundaryMode& b) {
        if (a.kind != b.kind) return false;
        return a.kind != BoundaryKind::FrozenExterior || a.frozen == b.frozen;
    }
};

/// Parses "torus", "frozen:<digit>" or "masked".
BoundaryMode parse_boundary(std::string_view text);
std::string to_string(const BoundaryMode& b);

class RegionMask {
  public:
    RegionMask() = default;
    RegionMask(int width, int height, bool fill = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_ &&
               bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    bool test(std::size_t index) const noexcept { return bits_[index] != 0; }
    void set(int x, int y, bool on = true);
    void set_rect(const Rect& r, bool on = true);

    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    friend bool operator==(const RegionMask&, const RegionMask&) = default;

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

struct NeighborStats {
    int n = 0;       // neighbors in the state, 0..4
    int nh = 0;      // west/east neighbors in the state, 0..2
    int nv = 0;      // north/south neighbors in the state, 0..2
    int nprime = 0;  // coordinate directions holding at least one such neighbor, 0..2

    friend bool operator==(const NeighborStats&, const NeighborStats&) = default;
};

class Config {
  public:
    /// Every site starts in `fill`. A Masked config starts with a full mask.
    Config(int width, int height, int kappa, BoundaryMode boundary, State fill = 0);
    /// Masked config whose domain is `mask`; sites outside it are held at 0.
    Config(int kappa, RegionMask mask, State fill = 0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int kappa() const noexcept { return kappa_; }
    std::size_t size() const noexcept { return cells_.size(); }
    const BoundaryMode& boundary() const noexcept { return boundary_; }
    const std::optional<RegionMask>& mask() const noexcept { return mask_; }

    bool in_lattice(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    /// In the lattice and, under Masked, in the mask.
    bool in_domain(int x, int y) const noexcept {
        return in_lattice(x, y) && (!mask_ || mask_->contains(x, y));
    }
    bool in_domain(std::size_t index) const noexcept { return !mask_ || mask_->test(index); }

    std::size_t index(int x, int y) const noexcept { return static_cast<std::size_t>(y) * width_ + x; }
    Site site(std::size_t index) const noexcept {
        return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
    }

    /// Throws Coordinate/Domain errors.
    State at(int x, int y) const;
    State at(Site s) const { return at(s.x, s.y); }
    void set(int x, int y, State s);
    void set(Site site, State s) { set(site.x, site.y, s); }

    /// Raw row-major cells; masked-out entries are 0.
    std::span<const State> cells() const noexcept { return cells_; }
    std::span<State> cells() noexcept { return cells_; }

    std::size_t count(State s) const noexcept;
    /// Number of sites in the domain.
    std::size_t domain_size() const noexcept;

    friend bool operator==(const Config&, const Config&) = default;

  private:
    int width_;
    int height_;
    int kappa_;
    BoundaryMode boundary_;
    std::vector<State> cells_;
    std::optional<RegionMask> mask_;
};

/// Neighbor positions of a lattice after the boundary mode has been applied.
/// Entries are site indices, or kAbsent / kFrozen.
class Topology {
  public:
    static constexpr std::int32_t kAbsent = -1;
    static constexpr std::int32_t kFrozen = -2;
    enum Dir { West = 0, East = 1, North = 2, South = 3 };

    explicit Topology(const Config& config);

    const std::array<std::int32_t, 4>& neighbors(std::size_t index) const noexcept { return table_[index]; }
    State frozen_state() const noexcept { return frozen_; }

  private:
    std::vector<std::array<std::int32_t, 4>> table_;
    State frozen_ = 0;
};

NeighborStats neighbor_stats(const Config& config, Site x, State s);

/// Same counts from the four neighbor states of a site (-1 = absent).
/// Order is west, east, north, south.
inline NeighborStats stats_from(const std::array<int, 4>& nb, State s) {
    NeighborStats out;
    out.nh = (nb[0] == s) + (nb[1] == s);
    out.nv = (nb[2] == s) + (nb[3] == s);
    out.n = out.nh + out.nv;
    out.nprime = (out.nh >= 1) + (out.nv >= 1);
    return out;
}

struct Component {
    std::vector<Site> sites;
    /// Bounding box in unwrapped coordinates; on a torus it can extend past the
    /// lattice edges when the component crosses the seam.
    Rect bbox;
    /// l-infinity diameter; kUnbounded for a component that wraps around a torus.
    long long diameter = 0;
    bool is_rectangle = false;
    bool wraps = false;

    static constexpr long long kUnbounded = (1LL << 62);
};

/// Maximal 4-connected components of sites in state s, ordered by their first
/// site in row-major order. Torus adjacency wraps.
std::vector<Component> components(const Config& config, State s);

Config parse_config(std::string_view text);
std::string serialize_config(const Config& config);

}  // namespace twostage
