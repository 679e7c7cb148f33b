#pragma once

#include <array>
#include <string>
#include <vector>

#include "twostage/grid.hpp"

namespace twostage {

using Rgb = std::array<unsigned char, 3>;

/// colors[s] is the color of state s.
struct Palette {
    std::vector<Rgb> colors;
};

/// 0 yellow, 1 red, 2 blue, then fixed extra colors for higher states.
Palette default_palette(int kappa = 2);

/// Binary P6 image, one pixel per site, rows top to bottom. Masked-out sites
/// are black. Throws InvalidArgument if a state has no color.
std::string render_ppm(const Config& config, const Palette& palette);

}  // namespace twostage
