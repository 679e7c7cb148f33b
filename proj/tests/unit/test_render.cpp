#include <doctest.h>

#include "helpers.hpp"
#include "twostage/render.hpp"

using namespace twostage;
using testing::grid;

TEST_CASE("ppm rendering") {
    const std::string one = render_ppm(grid({"2"}), default_palette());
    CHECK(one == std::string("P6\n1 1\n255\n") + std::string{'\x1e', '\x3c', '\xdc'});

    const std::string row = render_ppm(grid({"01"}), default_palette());
    CHECK(row.substr(row.size() - 6) == std::string{'\xff', '\xdd', '\x00', '\xdc', '\x1e', '\x1e'});

    const std::string masked = render_ppm(grid({"1.", ".2"}, "masked"), default_palette());
    CHECK(masked.substr(masked.size() - 12, 6) == std::string{'\xdc', '\x1e', '\x1e', 0, 0, 0});

    CHECK(render_ppm(grid({"012", "210"}), default_palette()) == render_ppm(grid({"012", "210"}), default_palette()));
    CHECK(default_palette(5).colors.size() == 6);
    CHECK_THROWS_AS(render_ppm(grid({"3"}, "torus", 3), default_palette(2)), Error);
}
