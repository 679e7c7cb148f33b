#include "twostage/sampler.hpp"

#include <cmath>

namespace twostage {

InitSpec InitSpec::two_stage(int width, int height, double p, double q, BoundaryMode b) {
    return InitSpec{width, height, 2, {1.0 - p - q, p, q}, b};
}

void validate(const InitSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0) throw Error(ErrorCode::InvalidArgument, "lattice dimensions must be positive");
    if (spec.kappa < 1 || spec.kappa > kMaxKappa) throw Error(ErrorCode::InvalidArgument, "kappa out of range");
    if (spec.probs.size() != static_cast<std::size_t>(spec.kappa) + 1) {
        throw Error(ErrorCode::InvalidArgument, "need kappa+1 probabilities");
    }
    if (spec.boundary.kind == BoundaryKind::Masked) {
        throw Error(ErrorCode::InvalidArgument, "sample a full lattice and restrict it afterwards");
    }
    double total = 0.0;
    for (double v : spec.probs) {
        if (!(v >= -1e-12) || !std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "probabilities must be non-negative");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "probabilities must sum to 1");
}

Config sample_product(const InitSpec& spec, const SeedSpec& seed) {
    validate(spec);
    Config config(spec.width, spec.height, spec.kappa, spec.boundary);

    // Upper-tail thresholds: state s wins when u < tail[s] and not u < tail[s+1].
    std::vector<double> tail(spec.probs.size() + 1, 0.0);
    for (int s = spec.kappa; s >= 0; --s) tail[s] = tail[s + 1] + std::max(spec.probs[s], 0.0);

    const std::uint64_t key = stream_key(seed);
    auto cells = config.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const double u = site_uniform(key, i);
        State s = 0;
        for (int k = spec.kappa; k >= 1; --k) {
            if (u < tail[k]) {
                s = static_cast<State>(k);
                break;
            }
        }
        cells[i] = s;
    }
    return config;
}

int ignition_column(int half_side, int inset, long long j) {
    const int L = half_side;
    const int a = inset;
    switch (((j % 4) + 4) % 4) {
        case 0: return a;
        case 1: return 2 * L - 1 - a;
        case 2: return a + 1;
        default: return 2 * L - 2 - a;
    }
}

IgnitionPattern build_ignition(int half_side, int inset, int strip_gap) {
    const int L = half_side;
    const int a = inset;
    if (a < 1 || strip_gap < 1) throw Error(ErrorCode::InvalidArgument, "inset and strip gap must be positive");
    if (L <= a + 2) throw Error(ErrorCode::Geometry, "ignition columns collide unless L > inset + 2");

    Config config(2 * L, 2 * L, 2, BoundaryMode::frozen_exterior(1), 1);
    const long long bottom_j = -3LL * L + 2 - strip_gap;
    for (int r = 0; r < 2 * L; ++r) {
        if (r == 2 * L - 1) {
            for (int x = 0; x < 2 * L; ++x) config.set(x, r, 2);
            continue;
        }
        const long long j = bottom_j + (2 * L - 1 - r);
        config.set(ignition_column(L, a, j), r, 2);
    }
    return IgnitionPattern{std::move(config), L, a, strip_gap};
}

Config overlay_square(const Config& config, Site center, int side, State s) {
    if (side <= 0) throw Error(ErrorCode::InvalidArgument, "side must be positive");
    if (s > config.kappa()) throw Error(ErrorCode::InvalidArgument, "state exceeds kappa");
    const int x0 = center.x - side / 2;
    const int y0 = center.y - side / 2;
    if (x0 < 0 || y0 < 0 || x0 + side > config.width() || y0 + side > config.height()) {
        throw Error(ErrorCode::Geometry, "square does not fit in the lattice");
    }
    Config out = config;
    for (int y = y0; y < y0 + side; ++y)
        for (int x = x0; x < x0 + side; ++x) out.set(x, y, s);
    return out;
}

int FixtureRng::uniform_int(int lo, int hi) {
    if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(static_cast<long long>(hi) - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return static_cast<int>(lo + static_cast<long long>(v % span));
}

}  // namespace twostage
