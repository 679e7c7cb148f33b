#pragma once

#include <string>
#include <vector>

#include "twostage/grid.hpp"
#include "twostage/sampler.hpp"

namespace testing {

using namespace twostage;

inline Config grid(const std::vector<std::string>& rows, const std::string& boundary = "frozen:0", int kappa = 2) {
    std::string text = std::to_string(rows.front().size()) + " " + std::to_string(rows.size()) + " " +
                       std::to_string(kappa) + " " + boundary + "\n";
    for (const auto& r : rows) text += r + "\n";
    return parse_config(text);
}

inline std::vector<std::string> rows_of(const Config& c) {
    std::vector<std::string> out;
    for (int y = 0; y < c.height(); ++y) {
        std::string row;
        for (int x = 0; x < c.width(); ++x) {
            row += c.in_domain(x, y) ? static_cast<char>('0' + c.cells()[c.index(x, y)]) : '.';
        }
        out.push_back(row);
    }
    return out;
}

/// Uniformly random cells in [0, kappa].
inline Config random_config(FixtureRng& rng, int w, int h, int kappa, BoundaryMode b) {
    Config c(w, h, kappa, b);
    for (auto& s : c.cells()) s = static_cast<State>(rng.uniform_int(0, kappa));
    return c;
}

/// Random cells with P(1) = p and P(2) = q.
inline Config random_pq(FixtureRng& rng, int w, int h, double p, double q, BoundaryMode b) {
    Config c(w, h, 2, b);
    for (auto& s : c.cells()) {
        const double u = rng.unit();
        s = u < q ? 2 : (u < q + p ? 1 : 0);
    }
    return c;
}

}  // namespace testing
