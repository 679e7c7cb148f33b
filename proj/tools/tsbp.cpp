// tsbp: command-line front end over the C interface.
//
// Exit status: 0 success, 1 a checked property failed, 2 usage or input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "twostage/twostage.h"

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(tsbp_status s) {
    if (s != TSBP_OK) throw UsageError(std::string(tsbp_status_name(s)) + ": " + tsbp_last_error());
}

struct ConfigDeleter {
    void operator()(tsbp_config* c) const { tsbp_config_free(c); }
};
struct RuleDeleter {
    void operator()(tsbp_rule* r) const { tsbp_rule_free(r); }
};
struct RunDeleter {
    void operator()(tsbp_run* r) const { tsbp_run_free(r); }
};
struct TextDeleter {
    void operator()(tsbp_text* t) const { tsbp_text_free(t); }
};
using ConfigPtr = std::unique_ptr<tsbp_config, ConfigDeleter>;
using RulePtr = std::unique_ptr<tsbp_rule, RuleDeleter>;
using RunPtr = std::unique_ptr<tsbp_run, RunDeleter>;
using TextPtr = std::unique_ptr<tsbp_text, TextDeleter>;

std::string take(tsbp_text* raw) {
    TextPtr t(raw);
    return std::string(tsbp_text_data(t.get()), tsbp_text_size(t.get()));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw UsageError("failed writing " + path.string());
}

ConfigPtr load_config(const std::string& path) {
    const std::string text = read_file(path);
    tsbp_config* raw = nullptr;
    const tsbp_status s = tsbp_config_parse(text.data(), text.size(), &raw);
    if (s != TSBP_OK) throw UsageError(path + ": " + tsbp_last_error());
    return ConfigPtr(raw);
}

std::string serialize(const tsbp_config* c) {
    tsbp_text* t = nullptr;
    check(tsbp_config_serialize(c, &t));
    return take(t);
}

std::string ppm(const tsbp_config* c) {
    tsbp_text* t = nullptr;
    check(tsbp_render_ppm(c, &t));
    return take(t);
}

std::vector<double> range(const std::string& text) {
    std::size_t n = 0;
    const tsbp_status s = tsbp_parse_range(text.c_str(), nullptr, 0, &n);
    if (s != TSBP_OK && s != TSBP_ERR_INSUFFICIENT_BUFFER) check(s);
    std::vector<double> out(n);
    check(tsbp_parse_range(text.c_str(), out.data(), out.size(), &n));
    return out;
}

std::vector<std::string> lines_of(tsbp_text* raw) {
    std::vector<std::string> out;
    std::istringstream in(take(raw));
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string rect_text(const tsbp_rect& r) {
    return std::to_string(r.x0) + "," + std::to_string(r.y0) + "," + std::to_string(r.x1) + "," + std::to_string(r.y1);
}

int default_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// ---------------------------------------------------------------------------

struct RunArgs {
    std::string rule = "standard";
    int kappa = 2;
    int width = 0;
    int height = 0;
    double p = 0;
    double q = 0;
    std::vector<double> probs;
    std::string boundary = "torus";
    std::optional<std::uint64_t> seed;
    std::uint64_t trial = 0;
    std::string config;
    std::vector<long long> snaps;
    long long max_steps = -1;
    int square = 0;
    int square_state = 2;
    std::string out;
};

std::string density_line(const tsbp_config* c) {
    int kappa = 0;
    check(tsbp_config_shape(c, nullptr, nullptr, &kappa));
    std::int64_t total = 0;
    check(tsbp_config_domain_size(c, &total));
    std::string line;
    for (int s = 0; s <= kappa; ++s) {
        std::int64_t n = 0;
        check(tsbp_config_count(c, s, &n));
        line += (s ? " " : "") + std::string("density") + std::to_string(s) + "=" +
                fmt(static_cast<double>(n) / static_cast<double>(total));
    }
    return line;
}

int cmd_run(const RunArgs& a) {
    ConfigPtr initial;
    if (!a.config.empty()) {
        initial = load_config(a.config);
    } else {
        if (!a.seed) throw UsageError("run: --seed is required when sampling");
        if (a.width < 1 || a.height < 1) throw UsageError("run: --w and --h are required when sampling");
        std::vector<double> probs = a.probs;
        if (probs.empty()) {
            if (a.kappa != 2) throw UsageError("run: use --probs for kappa other than 2");
            probs = {1.0 - a.p - a.q, a.p, a.q};
            if (std::abs(probs[0]) < 1e-15) probs[0] = 0.0;
        }
        if (static_cast<int>(probs.size()) != a.kappa + 1) throw UsageError("run: --probs needs kappa+1 entries");
        tsbp_config* raw = nullptr;
        check(tsbp_sample(a.width, a.height, a.kappa, probs.data(), a.boundary.c_str(), *a.seed, a.trial, &raw));
        initial.reset(raw);
    }
    int width = 0, height = 0, kappa = 0;
    check(tsbp_config_shape(initial.get(), &width, &height, &kappa));
    if (a.square > 0) check(tsbp_config_overlay_square(initial.get(), width / 2, height / 2, a.square, a.square_state));

    tsbp_rule* rraw = nullptr;
    check(tsbp_rule_new(a.rule.c_str(), kappa, &rraw));
    RulePtr rule(rraw);

    std::vector<std::int64_t> times(a.snaps.begin(), a.snaps.end());
    tsbp_run* run_raw = nullptr;
    check(tsbp_run_with_snapshots(initial.get(), rule.get(), a.max_steps, times.data(), times.size(), &run_raw));
    RunPtr run(run_raw);

    std::int64_t steps = 0, period = 0;
    tsbp_halt halt = TSBP_HALT_FIXPOINT;
    check(tsbp_run_info(run.get(), &steps, &halt, &period));
    tsbp_config* fraw = nullptr;
    check(tsbp_run_final(run.get(), &fraw));
    ConfigPtr final(fraw);

    const fs::path dir(a.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "initial.txt", serialize(initial.get()));
    write_file(dir / "initial.ppm", ppm(initial.get()));
    write_file(dir / "final.txt", serialize(final.get()));
    write_file(dir / "final.ppm", ppm(final.get()));

    std::string summary;
    std::size_t count = 0;
    check(tsbp_run_snapshot_count(run.get(), &count));
    for (std::size_t i = 0; i < count; ++i) {
        std::int64_t t = 0;
        tsbp_config* sraw = nullptr;
        check(tsbp_run_snapshot(run.get(), i, &t, &sraw));
        ConfigPtr snap(sraw);
        const std::string stem = "snap_" + std::to_string(t);
        write_file(dir / (stem + ".txt"), serialize(snap.get()));
        write_file(dir / (stem + ".ppm"), ppm(snap.get()));
        summary += "snapshot t=" + std::to_string(t) + " " + density_line(snap.get()) + "\n";
    }
    const char* halt_name = halt == TSBP_HALT_FIXPOINT ? "fixpoint" : halt == TSBP_HALT_BUDGET ? "budget" : "cycle";
    summary += "final steps=" + std::to_string(steps) + " halt=" + halt_name;
    if (halt == TSBP_HALT_CYCLE) summary += " period=" + std::to_string(period);
    summary += " " + density_line(final.get()) + "\n";
    write_file(dir / "summary.txt", summary);
    std::cout << summary;
    return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::vector<std::string> rules{"standard"};
    std::string p;
    std::string q;
    std::optional<double> q_pow;
    double q_coef = 1.0;
    int width = 200;
    int height = 200;
    std::string boundary = "torus";
    int trials = 10;
    std::optional<std::uint64_t> seed;
    int jobs = default_jobs();
    long long large2 = 750;
    long long max_steps = -1;
    std::string csv;
};

int cmd_sweep(const SweepArgs& a) {
    if (!a.seed) throw UsageError("sweep: --seed is required");
    if (a.q.empty() == !a.q_pow.has_value()) throw UsageError("sweep: give exactly one of --q and --q-pow");
    const std::vector<double> ps = range(a.p);
    std::vector<double> pv, qv;
    if (a.q_pow) {
        for (double p : ps) {
            pv.push_back(p);
            qv.push_back(a.q_coef * std::pow(p, *a.q_pow));
        }
    } else {
        const std::vector<double> qs = range(a.q);
        for (double p : ps) {
            for (double q : qs) {
                pv.push_back(p);
                qv.push_back(q);
            }
        }
    }
    std::vector<const char*> rules;
    for (const auto& r : a.rules) rules.push_back(r.c_str());

    tsbp_sweep_spec spec{};
    spec.width = a.width;
    spec.height = a.height;
    spec.boundary = a.boundary.c_str();
    spec.rules = rules.data();
    spec.rule_count = rules.size();
    spec.p = pv.data();
    spec.q = qv.data();
    spec.cell_count = pv.size();
    spec.trials = a.trials;
    spec.base_seed = *a.seed;
    spec.jobs = a.jobs;
    spec.large2_threshold = a.large2;
    spec.max_steps = a.max_steps;
    tsbp_text* raw = nullptr;
    check(tsbp_sweep(&spec, &raw));
    const std::string csv = take(raw);
    if (a.csv.empty()) {
        std::cout << csv;
    } else {
        write_file(a.csv, csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
    std::string name;
    std::optional<int> trials;
    std::optional<int> size;
    std::optional<double> p;
    std::optional<double> q;
    std::optional<int> m;
    std::optional<std::uint64_t> seed;
    std::optional<long long> max_attempts;
    // evaluation of a single configuration
    std::string config;
    std::optional<int> j;
    std::string metric = "linf";
    std::vector<int> qbox;
    int pbox = 4;
    int qbox_side = 16;
    int center = 8;
    int frame_window = 16;
    int diam_limit = 4;
    bool eight = false;
    std::string region;
    std::string rule = "modified";
    std::string points;
    std::optional<int> r;
};

int check_config(const CheckArgs& a) {
    ConfigPtr c = load_config(a.config);
    const std::string& n = a.name;
    if (n == "al") {
        if (!a.j) throw UsageError("check al --config needs --j");
        int found = 0;
        tsbp_rect rect{};
        check(tsbp_al_witness(c.get(), *a.j, &found, &rect));
        std::cout << "al j=" << *a.j << " witness=" << (found ? rect_text(rect) : "-") << "\n";
        return found ? 0 : 1;
    }
    if (n == "elim") {
        int hyp = 0, elim = 0;
        check(tsbp_elimination(c.get(), &hyp, &elim));
        std::cout << "elim hypotheses=" << hyp << " eliminated=" << elim << "\n";
        return !hyp || elim ? 0 : 1;
    }
    if (n == "blocking") {
        tsbp_config* raw = nullptr;
        check(tsbp_blocking_zeros(c.get(), &raw));
        ConfigPtr marks(raw);
        std::int64_t count = 0;
        check(tsbp_config_count(marks.get(), 1, &count));
        std::cout << "blocking_zeros=" << count << "\n";
        std::cout << serialize(marks.get());
        return 0;
    }
    if (n == "frames") {
        if (a.metric != "linf" && a.metric != "l1") throw UsageError("--metric must be linf or l1");
        int w = 0, h = 0;
        check(tsbp_config_shape(c.get(), &w, &h, nullptr));
        std::size_t count = 0;
        const tsbp_rect all{0, 0, w - 1, h - 1};
        const int metric = a.metric == "linf" ? 0 : 1;
        const tsbp_status s = tsbp_find_frames(c.get(), all, metric, nullptr, 0, &count);
        if (s != TSBP_OK && s != TSBP_ERR_INSUFFICIENT_BUFFER) check(s);
        std::vector<tsbp_rect> rects(count);
        check(tsbp_find_frames(c.get(), all, metric, rects.data(), rects.size(), &count));
        std::cout << "frames=" << count << "\n";
        for (const auto& r : rects) std::cout << rect_text(r) << "\n";
        return 0;
    }
    if (n == "fillable") {
        if (a.qbox.size() != 2) throw UsageError("check fillable --config needs --qbox X,Y");
        tsbp_geometry g;
        tsbp_geometry_default(&g);
        g.pbox_side = a.pbox;
        g.qbox_side = a.qbox_side;
        g.center_side = a.center;
        g.frame_window = a.frame_window;
        const tsbp_rect box{a.qbox[0], a.qbox[1], a.qbox[0] + a.qbox_side - 1, a.qbox[1] + a.qbox_side - 1};
        int flags[4] = {0, 0, 0, 0};
        tsbp_text* raw = nullptr;
        check(tsbp_q_box_fillable(c.get(), box, &g, a.diam_limit, a.eight ? 1 : 0, flags, &raw));
        std::cout << take(raw) << "\n";
        return flags[0] && flags[1] && flags[2] && flags[3] ? 0 : 1;
    }
    if (n == "restrict") {
        if (a.region.empty()) throw UsageError("check restrict --config needs --region");
        ConfigPtr zone = load_config(a.region);
        tsbp_rule* rraw = nullptr;
        check(tsbp_rule_new(a.rule.c_str(), 2, &rraw));
        RulePtr rule(rraw);
        int flags[3] = {0, 0, 0};
        tsbp_text* raw = nullptr;
        check(tsbp_protected_region(c.get(), zone.get(), a.m.value_or(6), rule.get(), flags, &raw));
        std::cout << take(raw) << "\n";
        return flags[0] && flags[1] && flags[2] ? 0 : 1;
    }
    throw UsageError("check " + n + " does not take --config");
}

int check_shell_points(const CheckArgs& a) {
    if (!a.r) throw UsageError("check shell --points needs --r");
    std::istringstream in(read_file(a.points));
    std::vector<int> xy;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        int x = 0, y = 0;
        std::string rest;
        if (!(ls >> x >> y) || (ls >> rest)) {
            throw UsageError(a.points + ": line " + std::to_string(line_no) + ": expected two integers");
        }
        xy.push_back(x);
        xy.push_back(y);
    }
    int flags[4] = {0, 0, 0, 0};
    tsbp_text* raw = nullptr;
    check(tsbp_shell(xy.data(), xy.size() / 2, *a.r, flags, &raw));
    std::cout << take(raw) << "\n";
    return flags[0] && flags[1] && flags[2] && flags[3] ? 0 : 1;
}

int cmd_check(const CheckArgs& a) {
    if (!a.config.empty()) return check_config(a);
    if (!a.points.empty()) {
        if (a.name != "shell") throw UsageError("--points only applies to check shell");
        return check_shell_points(a);
    }
    if (!a.seed) throw UsageError("check " + a.name + ": --seed is required");
    tsbp_check_params params{};
    check(tsbp_check_defaults(a.name.c_str(), &params));
    if (a.trials) params.trials = *a.trials;
    if (a.size) params.size = *a.size;
    if (a.p) params.p = *a.p;
    if (a.q) params.q = *a.q;
    if (a.m) params.m = *a.m;
    if (a.max_attempts) params.max_attempts = *a.max_attempts;
    params.seed = *a.seed;
    int passed = 0;
    tsbp_text* raw = nullptr;
    check(tsbp_check_run(a.name.c_str(), &params, &passed, &raw));
    std::cout << take(raw) << "\n";
    return passed ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct FixtureArgs {
    std::string kind;
    int half_side = 8;
    int inset = 2;
    int gap = 1;
    int width = 32;
    int height = 32;
    double p = 0.3;
    double q = 0.3;
    int size = 48;
    int m = 6;
    long long max_attempts = 10'000;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_fixture(const FixtureArgs& a) {
    if (a.kind == "ignition") {
        tsbp_config* raw = nullptr;
        check(tsbp_ignition(a.half_side, a.inset, a.gap, &raw));
        ConfigPtr c(raw);
        if (a.out.empty()) {
            std::cout << serialize(c.get());
        } else {
            write_file(a.out, serialize(c.get()));
        }
        return 0;
    }
    if (!a.seed) throw UsageError("fixture " + a.kind + ": --seed is required");
    if (a.kind == "blocking") {
        tsbp_config* raw = nullptr;
        check(tsbp_fixture_blocking(a.width, a.height, a.p, a.q, *a.seed, &raw));
        ConfigPtr c(raw);
        if (a.out.empty()) {
            std::cout << serialize(c.get());
        } else {
            write_file(a.out, serialize(c.get()));
        }
        return 0;
    }
    // protected
    if (a.out.empty()) throw UsageError("fixture protected needs --out DIR");
    tsbp_config* craw = nullptr;
    tsbp_config* zraw = nullptr;
    check(tsbp_fixture_protected(a.size, a.m, *a.seed, a.max_attempts, &craw, &zraw));
    ConfigPtr c(craw), z(zraw);
    const fs::path dir(a.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "config.txt", serialize(c.get()));
    write_file(dir / "region.txt", serialize(z.get()));
    std::cout << "wrote " << (dir / "config.txt").string() << " and " << (dir / "region.txt").string() << "\n";
    return 0;
}

int cmd_render(const std::string& config, const std::string& out) {
    ConfigPtr c = load_config(config);
    write_file(out, ppm(c.get()));
    return 0;
}

std::vector<std::string> names_from(tsbp_status (*fn)(tsbp_text**)) {
    tsbp_text* raw = nullptr;
    check(fn(&raw));
    return lines_of(raw);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage bootstrap percolation: simulation, sweeps and structural checks"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", tsbp_version());

    const std::vector<std::string> rule_choices = names_from(tsbp_rule_names);
    const std::vector<std::string> check_choices = names_from(tsbp_check_names);

    // run
    RunArgs ra;
    auto* run = app.add_subcommand("run", "Simulate one configuration and write configs and PPM snapshots");
    run->add_option("--rule", ra.rule, "Update rule")->check(CLI::IsMember(rule_choices))->capture_default_str();
    run->add_option("--kappa", ra.kappa, "Number of non-zero states")->capture_default_str();
    run->add_option("--w", ra.width, "Lattice width");
    run->add_option("--h", ra.height, "Lattice height");
    run->add_option("--p", ra.p, "Initial density of 1s")->check(CLI::Range(0.0, 1.0));
    run->add_option("--q", ra.q, "Initial density of 2s")->check(CLI::Range(0.0, 1.0));
    run->add_option("--probs", ra.probs, "Per-state probabilities (kappa+1 values), overrides --p/--q")
        ->delimiter(',');
    run->add_option("--boundary", ra.boundary, "torus | frozen:<s>")->capture_default_str();
    run->add_option("--seed", ra.seed, "Base seed (required when sampling)");
    run->add_option("--trial", ra.trial, "Trial index of the per-site stream")->capture_default_str();
    run->add_option("--config", ra.config, "Start from this config file instead of sampling");
    run->add_option("--snap", ra.snaps, "Snapshot times (repeatable or comma-separated)")->delimiter(',');
    run->add_option("--max-steps", ra.max_steps, "Step budget (default: rule-dependent)");
    run->add_option("--square", ra.square, "Side of a central square overlaid before the run");
    run->add_option("--square-state", ra.square_state, "State of the overlaid square")->capture_default_str();
    run->add_option("--out", ra.out, "Output directory")->required();

    // sweep
    SweepArgs sa;
    auto* sw = app.add_subcommand("sweep", "Monte Carlo estimates over a grid of (p, q)");
    sw->add_option("--rule", sa.rules, "Rules (repeatable or comma-separated)")
        ->delimiter(',')
        ->check(CLI::IsMember(rule_choices))
        ->capture_default_str();
    sw->add_option("--p", sa.p, "p range start:stop:step (stop excluded) or a value")->required();
    auto* q_opt = sw->add_option("--q", sa.q, "q range or value (grid with --p)");
    auto* pow_opt = sw->add_option("--q-pow", sa.q_pow, "Use q = coef * p^gamma");
    q_opt->excludes(pow_opt);
    sw->add_option("--q-coef", sa.q_coef, "Coefficient of the power schedule")->capture_default_str();
    sw->add_option("--w", sa.width, "Lattice width")->capture_default_str();
    sw->add_option("--h", sa.height, "Lattice height")->capture_default_str();
    sw->add_option("--boundary", sa.boundary, "torus | frozen:<s>")->capture_default_str();
    sw->add_option("--trials", sa.trials, "Trials per cell")->capture_default_str();
    sw->add_option("--seed", sa.seed, "Base seed")->required();
    sw->add_option("--jobs", sa.jobs, "Worker threads")->capture_default_str();
    sw->add_option("--large2-threshold", sa.large2, "Diameter threshold of frac_large2")->capture_default_str();
    sw->add_option("--max-steps", sa.max_steps, "Step budget per trial (default: rule-dependent)");
    sw->add_option("--csv", sa.csv, "Write CSV here instead of stdout");

    // check
    CheckArgs ca;
    auto* ck = app.add_subcommand("check", "Randomized validation of a structural property, or evaluation on one config");
    ck->add_option("name", ca.name, "Property")->required()->check(CLI::IsMember(check_choices));
    ck->add_option("--trials", ca.trials, "Number of trials");
    ck->add_option("--size", ca.size, "Lattice side (or radius bound for shell)");
    ck->add_option("--p", ca.p, "Density of 1s");
    ck->add_option("--q", ca.q, "Density of 2s");
    ck->add_option("--m", ca.m, "Protection width m");
    ck->add_option("--seed", ca.seed, "Seed (required for randomized checks)");
    ck->add_option("--max-attempts", ca.max_attempts, "Fixture generator budget");
    ck->add_option("--config", ca.config, "Evaluate this config instead of random trials");
    ck->add_option("--j", ca.j, "al: target length");
    ck->add_option("--metric", ca.metric, "frames: linf | l1")->capture_default_str();
    ck->add_option("--qbox", ca.qbox, "fillable: top-left corner X,Y of the q-box")->delimiter(',')->expected(2);
    ck->add_option("--pbox", ca.pbox, "fillable: p-box side")->capture_default_str();
    ck->add_option("--qbox-side", ca.qbox_side, "fillable: q-box side")->capture_default_str();
    ck->add_option("--center", ca.center, "fillable: center box side")->capture_default_str();
    ck->add_option("--frame-window", ca.frame_window, "fillable: frame window side")->capture_default_str();
    ck->add_option("--diam-limit", ca.diam_limit, "fillable: component diameter limit in p-boxes")
        ->capture_default_str();
    ck->add_flag("--eight", ca.eight, "fillable: allow 8-adjacent circuits");
    ck->add_option("--region", ca.region, "restrict: config file whose non-zero sites form Z");
    ck->add_option("--rule", ca.rule, "restrict: rule for PR3")->check(CLI::IsMember(rule_choices))->capture_default_str();
    ck->add_option("--points", ca.points, "shell: file with one 'x y' point per line");
    ck->add_option("--r", ca.r, "shell: radius");

    // fixture
    FixtureArgs fa;
    auto* fx = app.add_subcommand("fixture", "Write a deterministic fixture");
    fx->add_option("kind", fa.kind, "ignition | blocking | protected")
        ->required()
        ->check(CLI::IsMember({"ignition", "blocking", "protected"}));
    fx->add_option("--L", fa.half_side, "ignition: half side L")->capture_default_str();
    fx->add_option("--a", fa.inset, "ignition: inset a")->capture_default_str();
    fx->add_option("--g", fa.gap, "ignition: strip gap g")->capture_default_str();
    fx->add_option("--w", fa.width, "blocking: width")->capture_default_str();
    fx->add_option("--h", fa.height, "blocking: height")->capture_default_str();
    fx->add_option("--p", fa.p, "blocking: density of 1s")->capture_default_str();
    fx->add_option("--q", fa.q, "blocking: density of 2s")->capture_default_str();
    fx->add_option("--size", fa.size, "protected: torus side")->capture_default_str();
    fx->add_option("--m", fa.m, "protected: protection width")->capture_default_str();
    fx->add_option("--max-attempts", fa.max_attempts, "protected: generator budget")->capture_default_str();
    fx->add_option("--seed", fa.seed, "Seed (blocking, protected)");
    fx->add_option("--out", fa.out, "Output file (directory for protected)");

    // render
    std::string render_in, render_out;
    auto* rd = app.add_subcommand("render", "Render a config file as a binary PPM");
    rd->add_option("--config", render_in, "Config file")->required();
    rd->add_option("--out", render_out, "PPM file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(ra);
        if (*sw) return cmd_sweep(sa);
        if (*ck) return cmd_check(ca);
        if (*fx) return cmd_fixture(fa);
        if (*rd) return cmd_render(render_in, render_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
