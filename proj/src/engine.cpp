#include "twostage/engine.hpp"

#include <cstring>
#include <unordered_map>

#include "detail.hpp"
#include "twostage/sampler.hpp"

namespace twostage {

const char* to_string(HaltReason h) {
    switch (h) {
        case HaltReason::Fixpoint: return "fixpoint";
        case HaltReason::StepBudgetExhausted: return "budget";
        case HaltReason::CycleDetected: return "cycle";
    }
    return "fixpoint";
}

long long default_max_steps(const Config& config, const RuleTable& rule) {
    const auto area = static_cast<long long>(config.size());
    return rule.monotone ? rule.kappa * area : 10 * area;
}

std::uint64_t config_hash(const Config& config) {
    const auto cells = config.cells();
    std::uint64_t h = mix64(0x2545f4914f6cdd1dULL ^ cells.size());
    std::size_t i = 0;
    for (; i + 8 <= cells.size(); i += 8) {
        std::uint64_t word;
        std::memcpy(&word, cells.data() + i, 8);
        h = mix64(h ^ word);
    }
    std::uint64_t tail = 0;
    for (std::size_t k = 0; i < cells.size(); ++i, ++k) tail |= static_cast<std::uint64_t>(cells[i]) << (8 * k);
    return mix64(h ^ tail ^ 0x9e3779b97f4a7c15ULL);
}

// ---------------------------------------------------------------------------

Stepper::Stepper(Config config, RuleTable rule)
    : config_(std::move(config)), rule_(std::move(rule)), topo_(config_), stamp_(config_.size(), 0) {
    detail::require_kappa(config_, rule_);
    candidates_.reserve(config_.size());
    for (std::size_t i = 0; i < config_.size(); ++i)
        if (config_.in_domain(i)) candidates_.push_back(static_cast<std::uint32_t>(i));
}

bool Stepper::advance() {
    changed_.clear();
    pending_.clear();
    const auto cells = config_.cells();
    for (const auto idx : candidates_) {
        const State next = apply_rule(rule_, cells[idx], detail::neighbor_states(topo_, cells, idx));
        if (next != cells[idx]) {
            changed_.push_back(idx);
            pending_.push_back(next);
        }
    }
    candidates_.clear();
    if (changed_.empty()) return false;

    auto out = config_.cells();
    for (std::size_t k = 0; k < changed_.size(); ++k) out[changed_[k]] = pending_[k];

    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    auto add = [&](std::uint32_t idx) {
        if (stamp_[idx] != epoch_) {
            stamp_[idx] = epoch_;
            candidates_.push_back(idx);
        }
    };
    for (const auto idx : changed_) {
        add(idx);
        for (const auto n : topo_.neighbors(idx))
            if (n >= 0) add(static_cast<std::uint32_t>(n));
    }
    ++time_;
    return true;
}

// ---------------------------------------------------------------------------

namespace {

// Remembers content hashes of visited configurations for rules that can cycle.
class CycleWatch {
  public:
    CycleWatch(const Config& initial, const RuleTable& rule, bool enabled)
        : initial_(initial), rule_(rule), enabled_(enabled) {
        if (enabled_) seen_.emplace(config_hash(initial), 0);
    }

    /// Period of the cycle closed by `current` at time t, or 0.
    long long observe(const Config& current, long long t) {
        if (!enabled_) return 0;
        const auto h = config_hash(current);
        auto [lo, hi] = seen_.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
            if (replay(it->second) == current) return t - it->second;
        }
        seen_.emplace(h, t);
        return 0;
    }

  private:
    Config replay(long long t) const {
        Config c = initial_;
        for (long long i = 0; i < t; ++i) c = step(c, rule_);
        return c;
    }

    const Config& initial_;
    const RuleTable& rule_;
    bool enabled_;
    std::unordered_multimap<std::uint64_t, long long> seen_;
};

bool is_fixpoint(const Config& config, const RuleTable& rule) {
    const Topology topo(config);
    std::vector<State> scratch(config.size());
    return !detail::step_into(topo, rule, config, scratch);
}

long long resolve_budget(const Config& config, const RuleTable& rule, std::optional<long long> max_steps) {
    const long long budget = max_steps.value_or(default_max_steps(config, rule));
    if (budget < 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be non-negative");
    return budget;
}

}  // namespace

RunReport run_to_fixpoint(const Config& config, const RuleTable& rule, std::optional<long long> max_steps) {
    detail::require_kappa(config, rule);
    const long long budget = resolve_budget(config, rule, max_steps);
    const Topology topo(config);
    CycleWatch watch(config, rule, !rule.monotone);

    RunReport report{config, 0, HaltReason::Fixpoint, 0, {}};
    Config next = config;
    while (true) {
        if (report.steps >= budget) {
            if (!is_fixpoint(report.final, rule)) report.halt = HaltReason::StepBudgetExhausted;
            return report;
        }
        if (!detail::step_into(topo, rule, report.final, next.cells())) return report;
        std::swap(report.final, next);
        ++report.steps;
        if (const long long period = watch.observe(report.final, report.steps)) {
            report.halt = HaltReason::CycleDetected;
            report.period = period;
            return report;
        }
    }
}

Config run_frontier(const Config& config, const RuleTable& rule) {
    if (!rule.monotone) throw Error(ErrorCode::Contract, "run_frontier needs a monotone rule");
    Stepper stepper(config, rule);
    while (stepper.advance()) {
    }
    return stepper.current();
}

RunReport run_with_snapshots(const Config& config, const RuleTable& rule, const std::vector<long long>& times,
                             std::optional<long long> max_steps) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0) throw Error(ErrorCode::InvalidArgument, "snapshot times must be non-negative");
        if (i > 0 && times[i] < times[i - 1]) throw Error(ErrorCode::InvalidArgument, "snapshot times must be sorted");
    }
    const long long budget = resolve_budget(config, rule, max_steps);
    Stepper stepper(config, rule);
    CycleWatch watch(config, rule, !rule.monotone);

    RunReport report{config, 0, HaltReason::Fixpoint, 0, {}};
    std::size_t next_time = 0;
    auto record = [&] {
        while (next_time < times.size() && times[next_time] <= stepper.time()) {
            report.snapshots.push_back({times[next_time], stepper.current()});
            ++next_time;
        }
    };

    record();
    while (true) {
        if (stepper.time() >= budget) {
            if (!is_fixpoint(stepper.current(), rule)) report.halt = HaltReason::StepBudgetExhausted;
            break;
        }
        if (!stepper.advance()) break;
        if (const long long period = watch.observe(stepper.current(), stepper.time())) {
            report.halt = HaltReason::CycleDetected;
            report.period = period;
            record();
            break;
        }
        record();
    }
    for (; next_time < times.size(); ++next_time) report.snapshots.push_back({times[next_time], stepper.current()});
    report.final = stepper.current();
    report.steps = stepper.time();
    return report;
}

RunReport run_internal(const Config& config, const RegionMask& region, const RuleTable& rule, bool zero_to_one,
                       std::optional<long long> max_steps) {
    if (region.width() != config.width() || region.height() != config.height()) {
        throw Error(ErrorCode::InvalidArgument, "region shape does not match the config");
    }
    if (region.empty()) throw Error(ErrorCode::Domain, "internal dynamics need a nonempty region");
    detail::require_kappa(config, rule);

    Config masked(config.kappa(), region);
    const auto src = config.cells();
    auto dst = masked.cells();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (!region.test(i)) continue;
        if (!config.in_domain(i)) throw Error(ErrorCode::Domain, "region leaves the config's domain");
        dst[i] = (zero_to_one && src[i] == 0) ? State{1} : src[i];
    }
    return rule.monotone ? run_with_snapshots(masked, rule, {}, max_steps) : run_to_fixpoint(masked, rule, max_steps);
}

}  // namespace twostage
