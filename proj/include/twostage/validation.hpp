#pragma once

// Randomized validations of the structural properties, and the fixture builders
// they draw from. Every function is deterministic in its seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twostage/grid.hpp"
#include "twostage/rules.hpp"
#include "twostage/sampler.hpp"
#include "twostage/structure.hpp"

namespace twostage {

struct CheckParams {
    int trials = 100;
    int size = 30;
    double p = 0.2;
    double q = 0.1;
    int m = 6;
    std::uint64_t seed = 1;
    long long max_attempts = 1'000'000;
};

struct CheckOutcome {
    bool passed = false;
    long long cases = 0;     // individual assertions evaluated
    long long failures = 0;
    long long starved = 0;   // fixtures the generator could not produce
    std::string detail;      // first failure, if any
};

/// al, elim, restrict, blocking, frames, shell, fillable.
const std::vector<std::string>& check_names();
CheckParams default_check_params(const std::string& name);
CheckOutcome run_check(const std::string& name, const CheckParams& params);

/// Every created rectangle of a 2-closure with long side L yields a witness for each j <= L.
CheckOutcome check_al(const CheckParams& params);
/// 0-elimination on frame-free rectangles with the exterior pinned to 1.
CheckOutcome check_elim(const CheckParams& params);
/// Domination of the full modified dynamics by the restricted dynamics on protected regions.
CheckOutcome check_restrict(const CheckParams& params);
/// "2 0 2" centers and blocking 0s stay 0 under the modified rule.
CheckOutcome check_blocking(const CheckParams& params);
/// find_frames against a literal definition check, both metrics.
CheckOutcome check_frames(const CheckParams& params);
/// Exact l1 circles and their diagonal completions for r in [4, size].
CheckOutcome check_shell(const CheckParams& params);
/// Circuit witnesses of random q-boxes verify, and the built fillable fixture passes.
CheckOutcome check_fillable(const CheckParams& params);

/// Literal frame test used as the reference for find_frames.
bool frame_by_definition(const Config& config, const Rect& r, FrameMetric metric);

/// No frame in the config and every 5x5 square meeting it (clipped) has at most two 2s.
bool elimination_hypotheses(const Config& config);

/// A rectangle with sides in [min_side, max_side] over FrozenExterior(1) that
/// satisfies elimination_hypotheses, or nothing after max_attempts draws.
std::optional<Config> make_elim_fixture(FixtureRng& rng, int min_side, int max_side, long long max_attempts,
                                        long long* attempts_used = nullptr);

struct ProtectedFixture {
    Config config;
    RegionMask zone;
    int m = 0;
};

/// Torus fixture: Z a union of centered rectangles whose convex corners sit
/// under/over a "2 0 2" pattern, a 0/1 band of width m+1 inside Z, sparse 2s
/// in the core, and dense 2s outside. Not checked against the report.
ProtectedFixture make_protected_fixture(FixtureRng& rng, int size, int m);

/// Same as above but redrawn until protected_region_report passes under the
/// modified rule; nothing after max_attempts.
std::optional<ProtectedFixture> make_valid_protected_fixture(FixtureRng& rng, int size, int m, long long max_attempts);

/// Steps the full and restricted modified dynamics in lockstep; returns the
/// first time a 2 of Z in the full dynamics is not a 2 in the restricted one.
std::optional<long long> restriction_violation(const ProtectedFixture& fixture);

/// q-box fixture on a lattice of side 3*qbox with the q-box in the middle:
/// all 1s, 2s on a spread permutation inside the center box.
struct FillableFixture {
    Config config;
    Rect qbox;
    BoxGeometry geom;
    int diam_limit = 0;
};
FillableFixture make_fillable_fixture();

/// Random configuration for the blocking fixture: product measure with the
/// given densities plus `planted` rows holding "2 0...0 2" segments.
Config make_blocking_fixture(int width, int height, double p, double q, std::uint64_t seed);

/// Independent check that `tiles` are crossable and cut the center box off from the q-box border.
bool verify_circuit(const Config& config, const Rect& qbox, const BoxGeometry& geom,
                    const std::vector<TileIndex>& tiles, TileAdjacency circuit = TileAdjacency::Four);

/// Text summary "check=<name> passed=<0|1> cases=... failures=... starved=...".
std::string format_outcome(const std::string& name, const CheckOutcome& outcome);

}  // namespace twostage
