#include "twostage/experiments.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace twostage {

Site lattice_origin(int width, int height) { return {width / 2, height / 2}; }

TrialOutcome measure(const RunReport& run) {
    const Config& final = run.final;
    TrialOutcome out;
    const Site o = lattice_origin(final.width(), final.height());
    out.origin_state = final.in_domain(o.x, o.y) ? final.cells()[final.index(o.x, o.y)] : State{0};
    out.densities.assign(static_cast<std::size_t>(final.kappa()) + 1, 0.0);
    const auto total = static_cast<double>(final.domain_size());
    for (int s = 0; s <= final.kappa(); ++s) out.densities[s] = static_cast<double>(final.count(static_cast<State>(s))) / total;
    if (final.kappa() >= 2) {
        for (const Component& c : components(final, 2)) out.max2_diam = std::max(out.max2_diam, c.diameter);
    }
    out.steps = run.steps;
    out.halt = run.halt;
    return out;
}

TrialOutcome run_trial(const InitSpec& spec, const RuleTable& rule, const SeedSpec& seed,
                       std::optional<long long> max_steps) {
    const Config initial = sample_product(spec, seed);
    return measure(run_with_snapshots(initial, rule, {}, max_steps));
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_lock;
    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> guard(error_lock);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

SweepRow estimate_distribution(const InitSpec& spec, const std::string& rule_name, int trials, std::uint64_t base_seed,
                               const SweepOptions& options) {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    validate(spec);
    const RuleTable rule = make_rule(rule_name, spec.kappa);

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    parallel_for(trials, options.jobs, [&](int i) {
        outcomes[static_cast<std::size_t>(i)] =
            run_trial(spec, rule, SeedSpec{base_seed, static_cast<std::uint64_t>(i)}, options.max_steps);
    });

    const std::size_t states = static_cast<std::size_t>(spec.kappa) + 1;
    SweepRow row;
    row.rule = rule_name;
    row.width = spec.width;
    row.height = spec.height;
    row.p = states > 1 ? spec.probs[1] : 0.0;
    row.q = states > 2 ? spec.probs[2] : 0.0;
    row.trials = trials;
    row.base_seed = base_seed;
    row.freq.assign(states, 0.0);
    row.density.assign(states, 0.0);

    double steps_sum = 0;
    int steps_count = 0;
    int large = 0;
    for (const TrialOutcome& t : outcomes) {
        row.freq[t.origin_state] += 1.0;
        for (std::size_t s = 0; s < states; ++s) row.density[s] += t.densities[s];
        if (t.max2_diam > options.large2_threshold) ++large;
        if (t.halt == HaltReason::CycleDetected) {
            ++row.cycles;
        } else {
            steps_sum += static_cast<double>(t.steps);
            ++steps_count;
        }
    }
    for (std::size_t s = 0; s < states; ++s) {
        row.freq[s] /= trials;
        row.density[s] /= trials;
    }
    row.mean_steps = steps_count > 0 ? steps_sum / steps_count : std::numeric_limits<double>::quiet_NaN();
    row.frac_large2 = static_cast<double>(large) / trials;
    return row;
}

std::vector<SweepRow> sweep(const std::vector<SweepCell>& cells, const InitSpec& templ,
                            const std::vector<std::string>& rules, int trials, std::uint64_t base_seed,
                            const SweepOptions& options) {
    if (cells.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one (p,q) cell");
    if (rules.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one rule");
    if (templ.kappa != 2) throw Error(ErrorCode::InvalidArgument, "(p,q) sweeps need kappa 2");
    std::vector<SweepRow> rows;
    for (const auto& rule : rules) {
        for (const auto& cell : cells) {
            InitSpec spec = templ;
            spec.probs = {1.0 - cell.p - cell.q, cell.p, cell.q};
            if (std::abs(spec.probs[0]) < 1e-15) spec.probs[0] = 0.0;
            rows.push_back(estimate_distribution(spec, rule, trials, base_seed, options));
        }
    }
    return rows;
}

std::vector<SweepCell> power_schedule(const std::vector<double>& ps, double coef, double gamma) {
    std::vector<SweepCell> out;
    for (double p : ps) out.push_back({p, coef * std::pow(p, gamma)});
    return out;
}

namespace {

double parse_number(std::string_view text) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

std::vector<double> parse_range(std::string_view text) {
    const auto c1 = text.find(':');
    if (c1 == std::string_view::npos) return {parse_number(text)};
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw Error(ErrorCode::InvalidArgument, "range must be start:stop:step");
    }
    const double start = parse_number(text.substr(0, c1));
    const double stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_number(text.substr(c2 + 1));
    if (!(step > 0)) throw Error(ErrorCode::InvalidArgument, "range step must be positive");
    std::vector<double> out;
    const double eps = step * 1e-9;
    for (long long i = 0;; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v >= stop - eps) break;
        out.push_back(v);
        if (out.size() > 10'000'000) throw Error(ErrorCode::InvalidArgument, "range too long");
    }
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "range is empty");
    return out;
}

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string csv_header(int kappa) {
    std::string out = "rule,width,height,p,q,trials,base_seed";
    for (int s = 0; s <= kappa; ++s) out += ",freq" + std::to_string(s);
    for (int s = 0; s <= kappa; ++s) out += ",density" + std::to_string(s);
    return out + ",mean_steps,frac_large2,cycles";
}

std::string csv_row(const SweepRow& row) {
    std::string out = row.rule + "," + std::to_string(row.width) + "," + std::to_string(row.height) + "," + num(row.p) +
                      "," + num(row.q) + "," + std::to_string(row.trials) + "," + std::to_string(row.base_seed);
    for (double f : row.freq) out += "," + num(f);
    for (double d : row.density) out += "," + num(d);
    return out + "," + num(row.mean_steps) + "," + num(row.frac_large2) + "," + std::to_string(row.cycles);
}

std::string to_csv(const std::vector<SweepRow>& rows) {
    const int kappa = rows.empty() ? 2 : static_cast<int>(rows.front().freq.size()) - 1;
    std::string out = csv_header(kappa) + "\n";
    for (const auto& r : rows) out += csv_row(r) + "\n";
    return out;
}

}  // namespace twostage
