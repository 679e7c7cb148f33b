#include "twostage/rules.hpp"

#include "detail.hpp"

namespace twostage {

namespace {

Transition count(State target, State result) { return {CountAtLeast{target, 2}, result}; }
Transition directions(State target, State result) { return {DirectionsAtLeast{target, 2}, result}; }

}  // namespace

const std::vector<std::string>& rule_names() {
    static const std::vector<std::string> names{"standard",          "modified",          "standard-n2p",
                                                "modified-n2p",      "polluted-standard", "polluted-modified",
                                                "cyclic",            "competition",       "multicolor"};
    return names;
}

RuleTable make_table(int kappa, std::vector<std::optional<Transition>> transitions) {
    if (kappa < 1 || kappa > kMaxKappa) throw Error(ErrorCode::InvalidArgument, "kappa out of range");
    if (transitions.size() != static_cast<std::size_t>(kappa) + 1) {
        throw Error(ErrorCode::InvalidArgument, "need one transition slot per state");
    }
    bool monotone = !transitions.back().has_value();
    for (std::size_t s = 0; s < transitions.size(); ++s) {
        if (!transitions[s]) continue;
        const auto& t = *transitions[s];
        if (const auto* ex = std::get_if<ExclusiveCount>(&t.predicate)) {
            for (const auto& c : ex->candidates) {
                if (c.target > kappa || c.result > kappa) throw Error(ErrorCode::InvalidArgument, "state exceeds kappa");
                if (c.theta < 1 || c.theta > 5) throw Error(ErrorCode::InvalidArgument, "theta must lie in [1,5]");
                monotone = monotone && c.result > s;
            }
            continue;
        }
        if (t.result > kappa) throw Error(ErrorCode::InvalidArgument, "state exceeds kappa");
        if (const auto* c = std::get_if<CountAtLeast>(&t.predicate)) {
            if (c->target > kappa) throw Error(ErrorCode::InvalidArgument, "state exceeds kappa");
            if (c->theta < 1 || c->theta > 5) throw Error(ErrorCode::InvalidArgument, "theta must lie in [1,5]");
        } else if (const auto* d = std::get_if<DirectionsAtLeast>(&t.predicate)) {
            if (d->target > kappa) throw Error(ErrorCode::InvalidArgument, "state exceeds kappa");
            if (d->d < 1 || d->d > 2) throw Error(ErrorCode::InvalidArgument, "d must lie in [1,2]");
        }
        monotone = monotone && t.result > s;
    }
    return RuleTable{kappa, std::move(transitions), monotone};
}

RuleTable make_rule(std::string_view name, int kappa) {
    if (name == "multicolor") {
        if (kappa < 2 || kappa > kMaxKappa) {
            throw Error(ErrorCode::InvalidArgument, "multicolor needs kappa in [2, " + std::to_string(kMaxKappa) + "]");
        }
        std::vector<std::optional<Transition>> t(static_cast<std::size_t>(kappa) + 1);
        for (int i = 0; i < kappa; ++i) t[i] = count(static_cast<State>(i + 1), static_cast<State>(i + 1));
        return make_table(kappa, std::move(t));
    }

    bool known = false;
    for (const auto& n : rule_names()) known = known || n == name;
    if (!known) throw Error(ErrorCode::InvalidArgument, "unknown rule '" + std::string(name) + "'");
    if (kappa != 2) throw Error(ErrorCode::InvalidArgument, "rule '" + std::string(name) + "' needs kappa 2");

    std::vector<std::optional<Transition>> t(3);
    if (name == "competition") {
        t[0] = Transition{ExclusiveCount{{{1, 2, 1}, {2, 2, 2}}}, 0};
        return make_table(2, std::move(t));
    }

    const bool modified = name == "modified" || name == "modified-n2p" || name == "polluted-modified";
    t[0] = modified ? directions(1, 1) : count(1, 1);
    if (name == "polluted-standard" || name == "polluted-modified") {
        t[1] = Transition{Never{}, 2};
    } else if (name == "standard-n2p" || name == "modified-n2p") {
        t[1] = directions(2, 2);
    } else {
        t[1] = count(2, 2);
    }
    if (name == "cyclic") t[2] = count(0, 0);
    return make_table(2, std::move(t));
}

State apply_rule(const RuleTable& rule, State s, const std::array<int, 4>& nb) {
    const auto& slot = rule.transitions[s];
    if (!slot) return s;
    return std::visit(
        [&](const auto& p) -> State {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, CountAtLeast>) {
                return stats_from(nb, p.target).n >= p.theta ? slot->result : s;
            } else if constexpr (std::is_same_v<P, DirectionsAtLeast>) {
                return stats_from(nb, p.target).nprime >= p.d ? slot->result : s;
            } else if constexpr (std::is_same_v<P, ExclusiveCount>) {
                int fired = 0;
                State result = s;
                for (const auto& c : p.candidates) {
                    if (stats_from(nb, c.target).n >= c.theta) {
                        ++fired;
                        result = c.result;
                    }
                }
                return fired == 1 ? result : s;
            } else {
                return s;
            }
        },
        slot->predicate);
}

Config step(const Config& config, const RuleTable& rule) {
    detail::require_kappa(config, rule);
    const Topology topo(config);
    Config next = config;
    detail::step_into(topo, rule, config, next.cells());
    return next;
}

}  // namespace twostage
