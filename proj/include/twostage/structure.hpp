#pragma once

// Structural predicates on configurations: internal spanning, rectangle
// witnesses, blocking 0s, frames, crossable and fillable boxes, protected
// regions, shells, supportive vertices and helpful boxes.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "twostage/grid.hpp"
#include "twostage/rules.hpp"

namespace twostage {

struct BoxGeometry {
    int pbox_side = 4;
    int qbox_side = 16;
    int center_side = 8;
    int cross_arm = 10;        // N
    int cross_halfwidth = 2;   // m + 1
    int segment_len = 3;       // k + 1
    int rescale = 11;          // floor(1/q) + 1
    int frame_window = 16;     // side of the squares that must hold no frame

    int m() const noexcept { return cross_halfwidth - 1; }
    int k() const noexcept { return segment_len - 1; }
    /// Half side of a rescaled box: floor(floor(1/q) / 2).
    int helpful_half() const noexcept { return (rescale - 1) / 2; }

    /// Sizes from the densities: pbox 2*floor((1/p)log(1/p)), center box
    /// 2*floor((1/q)log(1/q)), qbox twice the center box, N = 10*floor(1/q),
    /// frame window 3*floor((1/p)log(1/p)log(1/q)).
    static BoxGeometry from_densities(double p, double q, int m, int k);

    friend bool operator==(const BoxGeometry&, const BoxGeometry&) = default;
};

enum class SpanVariant { Standard, Modified };

/// Whether the region ends all-1 under the internal dynamics of 1s on 0s.
bool is_internally_spanned(const Config& config, const RegionMask& region, SpanVariant variant);

/// Rectangles produced by repeatedly merging internally spanned rectangles of
/// 2s (starting from single 2s) whose l1 gap is at most 2, in creation order.
/// The last survivors are the rectangles of the closure of 2s on 1s.
struct MergeHistory {
    std::vector<Rect> created;
    std::vector<Rect> closure;
};
MergeHistory rectangle_merges(const Config& config);

/// A rectangle R with long(R) in [j/2, j] that the 2s fill under internal
/// dynamics, or nothing. The longest one in the merge history is chosen.
/// Requires a config of 1s and 2s only.
std::optional<Rect> al_witness(const Config& config, int j);

/// 0s whose row scan meets a 2 as the first non-0 site on both sides.
RegionMask blocking_zeros(const Config& config);

enum class FrameMetric { Linf, L1 };

/// Frames whose rectangle lies in `region`. A frame has at least 6 rows or 6
/// columns, a 2 on every side, and for every side a second 2 inside the
/// rectangle within distance 2 of that side.
std::vector<Rect> find_frames(const Config& config, const Rect& region, FrameMetric metric = FrameMetric::Linf);
/// First frame (row-major by corner) no wider than max_w and no taller than max_h.
std::optional<Rect> first_frame(const Config& config, const Rect& region, int max_w, int max_h,
                                FrameMetric metric = FrameMetric::Linf);

enum class CrossVariant { WithHalo, NoExternal2 };

bool p_box_crossable(const Config& config, const Rect& box, CrossVariant variant);

enum class TileAdjacency { Four, Eight };

struct TileIndex {
    int x = 0;
    int y = 0;
    friend bool operator==(const TileIndex&, const TileIndex&) = default;
    friend auto operator<=>(const TileIndex&, const TileIndex&) = default;
};

struct FillabilityReport {
    bool f1 = false;
    bool f2 = false;
    bool f3 = false;
    bool f4 = false;
    /// Tiles of a crossable circuit around the center box (present iff f1).
    std::optional<std::vector<TileIndex>> circuit_witness;
    /// Tiles of a component beyond diam_limit.
    std::optional<TileIndex> f2_witness;
    std::optional<Rect> frame_witness;
    /// A 5x5 square holding more than two 2s.
    std::optional<Rect> dense_square;
    /// A center-box row (y) or column (x) without a 2.
    std::optional<Site> f4_witness;

    bool all() const noexcept { return f1 && f2 && f3 && f4; }
};

/// (F1)-(F4) for the q-box `qbox`, tiled by p-boxes of geom.pbox_side.
FillabilityReport q_box_fillable(const Config& config, const Rect& qbox, const BoxGeometry& geom, int diam_limit,
                                 TileAdjacency circuit = TileAdjacency::Four);

/// Center box of a q-box: side center_side, offset center_side/2 from the corner.
Rect center_box(const Rect& qbox, const BoxGeometry& geom);

struct ProtectionReport {
    bool pr1 = false;
    bool pr2 = false;
    bool pr3 = false;
    std::optional<Site> pr1_witness;  // the vertex of Z with too few blocking 0s
    std::optional<Site> pr2_witness;  // a 2 of Z near the boundary of Z
    std::optional<Site> pr3_witness;  // a site of an oversized 2-component

    bool all() const noexcept { return pr1 && pr2 && pr3; }
};

/// Number of the four neighbor positions of `u` outside `zone`. Off-lattice
/// positions count under FrozenExterior; masked-out positions never count.
int nbrs_outside(const Config& config, const RegionMask& zone, Site u);

ProtectionReport protected_region_report(const Config& config, const RegionMask& zone, int m, const RuleTable& rule);

struct ShellReport {
    bool sh1 = false;
    bool sh2 = false;
    bool sh3 = false;
    bool sh4 = false;
    int radius = 0;
    std::optional<Site> sh1_witness;
    std::optional<Site> sh2_witness;
    std::optional<Site> sh4_witness;
    /// Largest reach k with k*phi in S, per phi in (1,1), (-1,1), (-1,-1), (1,-1); 0 if none.
    std::array<int, 4> diagonal_reach{};

    bool all() const noexcept { return sh1 && sh2 && sh3 && sh4; }
};

/// `u` lies off the axes and the quadrant-dependent 2x2 squares next to it meet `set`.
bool protected_by(const std::vector<Site>& sorted_set, Site u);

/// (SH1)-(SH4) for a set of plane points (x right, y up, origin at (0,0)).
ShellReport shell_report(std::vector<Site> set, int r);

/// {u : |u|_1 = r}.
std::vector<Site> l1_circle(int r);

/// Supportive per (SV1)-(SV3) with Cross(x) = band of half-width m+1 and arm N
/// in both orientations, Segment(x) = x + [0, k+1] x {0}.
bool is_supportive(const Config& config, Site x, const BoxGeometry& geom);

/// Q_u centered at origin + rescale*u with half side helpful_half().
Rect rescaled_box(Site u, const BoxGeometry& geom, Site origin = {0, 0});

/// Some site of Q_u at distance >= m+k+4 from its internal boundary is supportive.
bool is_helpful_box(const Config& config, Site u, const BoxGeometry& geom, Site origin = {0, 0});

/// Line-oriented summaries, e.g. "F1=1 F2=0 F3=1 F4=1".
std::string format_report(const FillabilityReport& r);
std::string format_report(const ProtectionReport& r);
std::string format_report(const ShellReport& r);

}  // namespace twostage
