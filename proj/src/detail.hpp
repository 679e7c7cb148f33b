#pragma once

// Shared internals of the core library; not installed.

#include <array>
#include <span>

#include "twostage/grid.hpp"
#include "twostage/rules.hpp"

namespace twostage::detail {

inline void require_kappa(const Config& config, const RuleTable& rule) {
    if (config.kappa() != rule.kappa) {
        throw Error(ErrorCode::Contract, "config kappa " + std::to_string(config.kappa()) + " does not match rule kappa " +
                                             std::to_string(rule.kappa));
    }
}

inline std::array<int, 4> neighbor_states(const Topology& topo, std::span<const State> cells, std::size_t idx) {
    const auto& nb = topo.neighbors(idx);
    std::array<int, 4> out{};
    for (int d = 0; d < 4; ++d) {
        const auto n = nb[d];
        out[d] = n >= 0 ? cells[static_cast<std::size_t>(n)] : (n == Topology::kFrozen ? topo.frozen_state() : -1);
    }
    return out;
}

/// Writes the synchronous successor of `config` into `out` (same size).
/// Returns whether any domain site changed.
inline bool step_into(const Topology& topo, const RuleTable& rule, const Config& config, std::span<State> out) {
    const auto cells = config.cells();
    bool changed = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!config.in_domain(i)) {
            out[i] = cells[i];
            continue;
        }
        const State next = apply_rule(rule, cells[i], neighbor_states(topo, cells, i));
        changed = changed || next != cells[i];
        out[i] = next;
    }
    return changed;
}

}  // namespace twostage::detail
