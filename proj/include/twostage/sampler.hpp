#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "twostage/grid.hpp"

namespace twostage {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct SeedSpec {
    std::uint64_t base_seed = 0;
    std::uint64_t trial_index = 0;
};

/// Key of the per-trial stream.
constexpr std::uint64_t stream_key(const SeedSpec& seed) noexcept {
    return mix64(seed.base_seed ^ mix64(seed.trial_index + 0x9e3779b97f4a7c15ULL));
}

/// Uniform in [0,1) for one site, a pure function of (key, site index).
constexpr double site_uniform(std::uint64_t key, std::uint64_t site) noexcept {
    return static_cast<double>(mix64(key + (site + 1) * 0x9e3779b97f4a7c15ULL) >> 11) * 0x1.0p-53;
}

struct InitSpec {
    int width = 1;
    int height = 1;
    int kappa = 2;
    /// probs[i] = P(state i); must sum to 1.
    std::vector<double> probs{1.0, 0.0, 0.0};
    BoundaryMode boundary = BoundaryMode::torus();

    /// Two-stage spec with P(1) = p, P(2) = q.
    static InitSpec two_stage(int width, int height, double p, double q, BoundaryMode b = BoundaryMode::torus());
};

/// Throws InvalidArgument unless probs has kappa+1 non-negative entries summing to 1 within 1e-12.
void validate(const InitSpec& spec);

/// Each site takes the largest state i whose upper tail probs[i] + ... + probs[kappa]
/// exceeds its uniform, so raising one probability only moves sites upward.
Config sample_product(const InitSpec& spec, const SeedSpec& seed);

struct IgnitionPattern {
    Config config;
    int half_side = 0;
    int inset = 0;
    int strip_gap = 0;
};

/// Column (0-based, width 2L) of the single 2 in a non-bottom row whose
/// plane row index is j.
int ignition_column(int half_side, int inset, long long j);

/// The 2L x 2L block B' with all 1s, a full bottom row of 2s and one 2 per
/// other row on the mod-4 column schedule. Row r (0 = top) is plane row
/// j = -3L + 2 - g + (2L - 1 - r). FrozenExterior(1) boundary.
IgnitionPattern build_ignition(int half_side, int inset, int strip_gap);

/// Copy of `config` with the side x side square whose top-left corner is
/// center - side/2 set to s.
Config overlay_square(const Config& config, Site center, int side, State s);

/// Deterministic generator for test fixtures: mt19937_64 with its own
/// bounded mappings so results do not depend on the standard library.
class FixtureRng {
  public:
    explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return unit() < p; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace twostage
