#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twostage/engine.hpp"
#include "twostage/rules.hpp"
#include "twostage/sampler.hpp"

namespace twostage {

struct TrialOutcome {
    State origin_state = 0;
    std::vector<double> densities;  // per state, over the lattice
    long long max2_diam = -1;       // -1 without 2s; Component::kUnbounded for a wrapping component
    long long steps = 0;
    HaltReason halt = HaltReason::Fixpoint;
};

/// Origin used by trials: (floor(W/2), floor(H/2)).
Site lattice_origin(int width, int height);

TrialOutcome measure(const RunReport& run);
TrialOutcome run_trial(const InitSpec& spec, const RuleTable& rule, const SeedSpec& seed,
                       std::optional<long long> max_steps = {});

struct SweepRow {
    std::string rule;
    int width = 0;
    int height = 0;
    double p = 0;
    double q = 0;
    int trials = 0;
    std::uint64_t base_seed = 0;
    std::vector<double> freq;     // origin state frequencies, one per state
    std::vector<double> density;  // mean final densities, one per state
    double mean_steps = 0;        // over trials that did not end in a cycle; nan if none
    double frac_large2 = 0;
    int cycles = 0;
};

struct SweepOptions {
    int jobs = 1;
    long long large2_threshold = 750;
    std::optional<long long> max_steps;
};

/// Runs trial indices 0..trials-1 with `jobs` workers; results are stored by
/// index, so the row does not depend on the worker count.
SweepRow estimate_distribution(const InitSpec& spec, const std::string& rule_name, int trials, std::uint64_t base_seed,
                               const SweepOptions& options = {});

struct SweepCell {
    double p = 0;
    double q = 0;
};

/// One row per (rule, cell), rules outermost, cells in the given order. Every
/// cell reuses base_seed.
std::vector<SweepRow> sweep(const std::vector<SweepCell>& cells, const InitSpec& templ,
                            const std::vector<std::string>& rules, int trials, std::uint64_t base_seed,
                            const SweepOptions& options = {});

/// Cells (p, coef * p^gamma).
std::vector<SweepCell> power_schedule(const std::vector<double>& ps, double coef, double gamma);

/// "start:stop:step" (stop excluded) or a single number.
std::vector<double> parse_range(std::string_view text);

std::string csv_header(int kappa = 2);
std::string csv_row(const SweepRow& row);
std::string to_csv(const std::vector<SweepRow>& rows);

/// Calls fn(i) for i in [0, count) on `jobs` threads. The first exception is rethrown.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace twostage
