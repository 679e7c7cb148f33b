#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twostage/grid.hpp"
#include "twostage/rules.hpp"

namespace twostage {

enum class HaltReason { Fixpoint, StepBudgetExhausted, CycleDetected };

const char* to_string(HaltReason h);

struct Snapshot {
    long long time = 0;
    Config config;
};

struct RunReport {
    /// For a detected cycle this is the configuration that recurred.
    Config final;
    /// Number of steps that changed the configuration.
    long long steps = 0;
    HaltReason halt = HaltReason::Fixpoint;
    long long period = 0;  // set when halt == CycleDetected
    std::vector<Snapshot> snapshots;
};

/// kappa*W*H for monotone rules, 10*W*H otherwise.
long long default_max_steps(const Config& config, const RuleTable& rule);

/// Reference runner: full synchronous sweeps until nothing changes. Rules
/// that are not monotone also stop when a configuration recurs.
RunReport run_to_fixpoint(const Config& config, const RuleTable& rule, std::optional<long long> max_steps = {});

/// Final configuration of a monotone rule, updating only sites next to the
/// previous step's flips. Throws Contract for a non-monotone rule.
Config run_frontier(const Config& config, const RuleTable& rule);

/// Dynamics restricted to `region`, states inherited from `config`. With
/// zero_to_one every 0 of the region starts as a 1. The final config is Masked.
RunReport run_internal(const Config& config, const RegionMask& region, const RuleTable& rule, bool zero_to_one,
                       std::optional<long long> max_steps = {});

/// Frontier-driven run recording the configuration at each of `times`
/// (non-decreasing). Times past the halt get the halting configuration.
RunReport run_with_snapshots(const Config& config, const RuleTable& rule, const std::vector<long long>& times,
                             std::optional<long long> max_steps = {});

/// Incremental synchronous stepping that only re-evaluates sites whose
/// neighborhood changed in the previous step. Valid for every rule.
class Stepper {
  public:
    Stepper(Config config, RuleTable rule);

    /// Performs one step; returns false (and leaves the config alone) at a fixpoint.
    bool advance();
    const Config& current() const noexcept { return config_; }
    /// Steps taken that changed something.
    long long time() const noexcept { return time_; }
    /// Sites changed by the last successful advance().
    const std::vector<std::uint32_t>& last_changed() const noexcept { return changed_; }

  private:
    Config config_;
    RuleTable rule_;
    Topology topo_;
    std::vector<std::uint32_t> candidates_;
    std::vector<std::uint32_t> changed_;
    std::vector<State> pending_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    long long time_ = 0;
};

/// 64-bit content hash of a configuration's cells.
std::uint64_t config_hash(const Config& config);

}  // namespace twostage
