#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twostage/grid.hpp"

namespace twostage {

struct CountAtLeast {
    State target = 0;
    int theta = 2;
    friend bool operator==(const CountAtLeast&, const CountAtLeast&) = default;
};

/// Fires when N'_target >= d, i.e. neighbors in target along d coordinate axes.
struct DirectionsAtLeast {
    State target = 0;
    int d = 2;
    friend bool operator==(const DirectionsAtLeast&, const DirectionsAtLeast&) = default;
};

struct ExclusiveCandidate {
    State target = 0;
    int theta = 2;
    State result = 0;
    friend bool operator==(const ExclusiveCandidate&, const ExclusiveCandidate&) = default;
};

/// Fires only if exactly one candidate reaches its threshold; the site then
/// moves to that candidate's result.
struct ExclusiveCount {
    std::vector<ExclusiveCandidate> candidates;
    friend bool operator==(const ExclusiveCount&, const ExclusiveCount&) = default;
};

struct Never {
    friend bool operator==(const Never&, const Never&) = default;
};

using TransitionPredicate = std::variant<CountAtLeast, DirectionsAtLeast, ExclusiveCount, Never>;

struct Transition {
    TransitionPredicate predicate;
    State result = 0;  // unused for ExclusiveCount
    friend bool operator==(const Transition&, const Transition&) = default;
};

struct RuleTable {
    int kappa = 2;
    /// transitions[s] applies to sites currently in state s.
    std::vector<std::optional<Transition>> transitions;
    bool monotone = true;

    friend bool operator==(const RuleTable&, const RuleTable&) = default;
};

/// standard, modified, standard-n2p, modified-n2p, polluted-standard,
/// polluted-modified, cyclic, competition, multicolor.
RuleTable make_rule(std::string_view name, int kappa = 2);
const std::vector<std::string>& rule_names();

/// Builds a table from explicit transitions and derives the monotone flag.
RuleTable make_table(int kappa, std::vector<std::optional<Transition>> transitions);

/// New state of a site in state `s` whose four neighbors (west, east, north,
/// south) hold `nb`; -1 marks an absent neighbor.
State apply_rule(const RuleTable& rule, State s, const std::array<int, 4>& nb);

/// One synchronous update. Throws Contract on a kappa mismatch.
Config step(const Config& config, const RuleTable& rule);

}  // namespace twostage
