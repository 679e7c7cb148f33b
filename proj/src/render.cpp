#include "twostage/render.hpp"

namespace twostage {

Palette default_palette(int kappa) {
    static const std::vector<Rgb> base{
        {255, 221, 0}, {220, 30, 30}, {30, 60, 220}, {40, 160, 60}, {150, 60, 180},
        {240, 130, 20}, {20, 170, 190}, {120, 120, 120}, {250, 250, 250}, {90, 50, 20},
    };
    if (kappa < 0 || kappa >= static_cast<int>(base.size())) throw Error(ErrorCode::InvalidArgument, "kappa out of range");
    return Palette{std::vector<Rgb>(base.begin(), base.begin() + kappa + 1)};
}

std::string render_ppm(const Config& config, const Palette& palette) {
    if (static_cast<int>(palette.colors.size()) <= config.kappa()) {
        throw Error(ErrorCode::InvalidArgument, "palette does not cover every state");
    }
    std::string out = "P6\n" + std::to_string(config.width()) + " " + std::to_string(config.height()) + "\n255\n";
    const std::size_t header = out.size();
    out.resize(header + 3 * config.size());
    const auto cells = config.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Rgb c = config.in_domain(i) ? palette.colors[cells[i]] : Rgb{0, 0, 0};
        out[header + 3 * i] = static_cast<char>(c[0]);
        out[header + 3 * i + 1] = static_cast<char>(c[1]);
        out[header + 3 * i + 2] = static_cast<char>(c[2]);
    }
    return out;
}

}  // namespace twostage
