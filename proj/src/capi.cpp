#include "twostage/twostage.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "twostage/engine.hpp"
#include "twostage/experiments.hpp"
#include "twostage/render.hpp"
#include "twostage/rules.hpp"
#include "twostage/sampler.hpp"
#include "twostage/structure.hpp"
#include "twostage/validation.hpp"

using namespace twostage;

namespace {

constexpr std::uint32_t kConfigTag = 0x54534331;  // "TSC1"
constexpr std::uint32_t kRuleTag = 0x54535231;
constexpr std::uint32_t kRunTag = 0x54535531;
constexpr std::uint32_t kTextTag = 0x54535431;

}  // namespace

struct tsbp_config {
    std::uint32_t tag = kConfigTag;
    Config value;
};

struct tsbp_rule {
    std::uint32_t tag = kRuleTag;
    RuleTable value;
};

struct tsbp_run {
    std::uint32_t tag = kRunTag;
    RunReport value;
};

struct tsbp_text {
    std::uint32_t tag = kTextTag;
    std::string value;
};

namespace {

thread_local std::string last_error;

struct Failure {
    tsbp_status status;
    std::string message;
};

tsbp_status fail(tsbp_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

tsbp_status map_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return TSBP_ERR_INVALID_ARGUMENT;
        case ErrorCode::Coordinate: return TSBP_ERR_COORDINATE;
        case ErrorCode::Domain: return TSBP_ERR_DOMAIN;
        case ErrorCode::Parse: return TSBP_ERR_PARSE;
        case ErrorCode::Contract: return TSBP_ERR_CONTRACT;
        case ErrorCode::Geometry: return TSBP_ERR_GEOMETRY;
    }
    return TSBP_ERR_UNKNOWN;
}

template <typename F>
tsbp_status guarded(F&& body) {
    try {
        return body();
    } catch (const Failure& f) {
        return fail(f.status, f.message);
    } catch (const Error& e) {
        return fail(map_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(TSBP_ERR_UNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return fail(TSBP_ERR_UNKNOWN, e.what());
    } catch (...) {
        return fail(TSBP_ERR_UNKNOWN, "unknown error");
    }
}

template <typename T>
void require_ptr(const T* p, const char* name) {
    if (p == nullptr) throw Failure{TSBP_ERR_NULL_POINTER, std::string(name) + " is NULL"};
}

const Config& cfg(const tsbp_config* c, const char* name = "config") {
    require_ptr(c, name);
    if (c->tag != kConfigTag) throw Failure{TSBP_ERR_INVALID_OBJECT, std::string(name) + " is not a configuration"};
    return c->value;
}

Config& cfg_mut(tsbp_config* c, const char* name = "config") {
    cfg(c, name);
    return c->value;
}

const RuleTable& rule_of(const tsbp_rule* r) {
    require_ptr(r, "rule");
    if (r->tag != kRuleTag) throw Failure{TSBP_ERR_INVALID_OBJECT, "rule is not a rule handle"};
    return r->value;
}

const RunReport& run_of(const tsbp_run* r) {
    require_ptr(r, "run");
    if (r->tag != kRunTag) throw Failure{TSBP_ERR_INVALID_OBJECT, "run is not a run handle"};
    return r->value;
}

tsbp_config* wrap(Config c) { return new tsbp_config{kConfigTag, std::move(c)}; }
tsbp_text* wrap_text(std::string s) { return new tsbp_text{kTextTag, std::move(s)}; }

std::optional<long long> budget(int64_t max_steps) {
    if (max_steps < 0) return std::nullopt;
    return static_cast<long long>(max_steps);
}

RegionMask mask_from(const tsbp_config* region, const Config& target) {
    const Config& r = cfg(region, "region");
    if (r.width() != target.width() || r.height() != target.height()) {
        throw Failure{TSBP_ERR_INVALID_ARGUMENT, "region and config sizes differ"};
    }
    RegionMask mask(r.width(), r.height(), false);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r.in_domain(i) && r.cells()[i] != 0) {
            const Site s = r.site(i);
            mask.set(s.x, s.y);
        }
    }
    return mask;
}

Rect rect_of(const tsbp_rect& r) { return {r.x0, r.y0, r.x1, r.y1}; }
tsbp_rect rect_to(const Rect& r) { return {r.x0, r.y0, r.x1, r.y1}; }

BoxGeometry geom_of(const tsbp_geometry* g) {
    require_ptr(g, "geometry");
    BoxGeometry out;
    out.pbox_side = g->pbox_side;
    out.qbox_side = g->qbox_side;
    out.center_side = g->center_side;
    out.cross_arm = g->cross_arm;
    out.cross_halfwidth = g->cross_halfwidth;
    out.segment_len = g->segment_len;
    out.rescale = g->rescale;
    out.frame_window = g->frame_window;
    return out;
}

void geom_to(const BoxGeometry& g, tsbp_geometry* out) {
    out->pbox_side = g.pbox_side;
    out->qbox_side = g.qbox_side;
    out->center_side = g.center_side;
    out->cross_arm = g.cross_arm;
    out->cross_halfwidth = g.cross_halfwidth;
    out->segment_len = g.segment_len;
    out->rescale = g.rescale;
    out->frame_window = g.frame_window;
}

std::string joined(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += n + "\n";
    return out;
}

}  // namespace

extern "C" {

const char* tsbp_version(void) { return "1.0.0"; }

const char* tsbp_last_error(void) { return last_error.c_str(); }

const char* tsbp_status_name(tsbp_status status) {
    switch (status) {
        case TSBP_OK: return "ok";
        case TSBP_ERR_INVALID_ARGUMENT: return "invalid argument";
        case TSBP_ERR_NULL_POINTER: return "null pointer";
        case TSBP_ERR_PARSE: return "parse error";
        case TSBP_ERR_COORDINATE: return "coordinate out of range";
        case TSBP_ERR_DOMAIN: return "site outside the domain";
        case TSBP_ERR_CONTRACT: return "contract violation";
        case TSBP_ERR_GEOMETRY: return "geometry error";
        case TSBP_ERR_INSUFFICIENT_BUFFER: return "insufficient buffer";
        case TSBP_ERR_INVALID_OBJECT: return "invalid object";
        case TSBP_ERR_UNKNOWN: return "unknown error";
    }
    return "unknown status";
}

// ---- text -------------------------------------------------------------------

const char* tsbp_text_data(const tsbp_text* text) {
    return text != nullptr && text->tag == kTextTag ? text->value.c_str() : nullptr;
}

size_t tsbp_text_size(const tsbp_text* text) {
    return text != nullptr && text->tag == kTextTag ? text->value.size() : 0;
}

void tsbp_text_free(tsbp_text* text) {
    if (text != nullptr && text->tag == kTextTag) {
        text->tag = 0;
        delete text;
    }
}

// ---- configurations -----------------------------------------------------------

tsbp_status tsbp_config_new(int width, int height, int kappa, const char* boundary, int fill, tsbp_config** out) {
    return guarded([&] {
        require_ptr(boundary, "boundary");
        require_ptr(out, "out");
        if (fill < 0 || fill > kMaxKappa) throw Error(ErrorCode::InvalidArgument, "fill state out of range");
        *out = wrap(Config(width, height, kappa, parse_boundary(boundary), static_cast<State>(fill)));
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_new_masked(int kappa, const tsbp_config* region, int fill, tsbp_config** out) {
    return guarded([&] {
        require_ptr(out, "out");
        const Config& r = cfg(region, "region");
        if (fill < 0 || fill > kMaxKappa) throw Error(ErrorCode::InvalidArgument, "fill state out of range");
        *out = wrap(Config(kappa, mask_from(region, r), static_cast<State>(fill)));
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_parse(const char* text, size_t length, tsbp_config** out) {
    return guarded([&] {
        require_ptr(text, "text");
        require_ptr(out, "out");
        *out = wrap(parse_config(std::string_view(text, length)));
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_serialize(const tsbp_config* config, tsbp_text** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(out, "out");
        *out = wrap_text(serialize_config(c));
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_clone(const tsbp_config* config, tsbp_config** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(out, "out");
        *out = wrap(c);
        return TSBP_OK;
    });
}

void tsbp_config_free(tsbp_config* config) {
    if (config != nullptr && config->tag == kConfigTag) {
        config->tag = 0;
        delete config;
    }
}

tsbp_status tsbp_config_shape(const tsbp_config* config, int* width, int* height, int* kappa) {
    return guarded([&] {
        const Config& c = cfg(config);
        if (width) *width = c.width();
        if (height) *height = c.height();
        if (kappa) *kappa = c.kappa();
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_boundary(const tsbp_config* config, tsbp_text** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(out, "out");
        *out = wrap_text(to_string(c.boundary()));
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_get(const tsbp_config* config, int x, int y, int* state) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(state, "state");
        *state = c.at(x, y);
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_set(tsbp_config* config, int x, int y, int state) {
    return guarded([&] {
        Config& c = cfg_mut(config);
        if (state < 0 || state > c.kappa()) throw Error(ErrorCode::InvalidArgument, "state out of range");
        c.set(x, y, static_cast<State>(state));
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_count(const tsbp_config* config, int state, int64_t* out) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(out, "out");
        if (state < 0 || state > c.kappa()) throw Error(ErrorCode::InvalidArgument, "state out of range");
        *out = static_cast<int64_t>(c.count(static_cast<State>(state)));
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_domain_size(const tsbp_config* config, int64_t* out) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(out, "out");
        *out = static_cast<int64_t>(c.domain_size());
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_equal(const tsbp_config* a, const tsbp_config* b, int* equal) {
    return guarded([&] {
        const Config& ca = cfg(a, "a");
        const Config& cb = cfg(b, "b");
        require_ptr(equal, "equal");
        *equal = ca == cb ? 1 : 0;
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_cells(const tsbp_config* config, uint8_t* cells, size_t capacity, size_t* written) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(written, "written");
        *written = c.size();
        if (cells == nullptr || capacity < c.size()) {
            throw Failure{TSBP_ERR_INSUFFICIENT_BUFFER, "need room for " + std::to_string(c.size()) + " cells"};
        }
        std::memcpy(cells, c.cells().data(), c.size());
        return TSBP_OK;
    });
}

tsbp_status tsbp_config_overlay_square(tsbp_config* config, int cx, int cy, int side, int state) {
    return guarded([&] {
        Config& c = cfg_mut(config);
        if (state < 0 || state > c.kappa()) throw Error(ErrorCode::InvalidArgument, "state out of range");
        c = overlay_square(c, {cx, cy}, side, static_cast<State>(state));
        return TSBP_OK;
    });
}

// ---- rules and dynamics -----------------------------------------------------------

tsbp_status tsbp_rule_names(tsbp_text** out) {
    return guarded([&] {
        require_ptr(out, "out");
        *out = wrap_text(joined(rule_names()));
        return TSBP_OK;
    });
}

tsbp_status tsbp_rule_new(const char* name, int kappa, tsbp_rule** out) {
    return guarded([&] {
        require_ptr(name, "name");
        require_ptr(out, "out");
        *out = new tsbp_rule{kRuleTag, make_rule(name, kappa)};
        return TSBP_OK;
    });
}

void tsbp_rule_free(tsbp_rule* rule) {
    if (rule != nullptr && rule->tag == kRuleTag) {
        rule->tag = 0;
        delete rule;
    }
}

tsbp_status tsbp_rule_is_monotone(const tsbp_rule* rule, int* monotone) {
    return guarded([&] {
        const RuleTable& r = rule_of(rule);
        require_ptr(monotone, "monotone");
        *monotone = r.monotone ? 1 : 0;
        return TSBP_OK;
    });
}

tsbp_status tsbp_step(const tsbp_config* config, const tsbp_rule* rule, tsbp_config** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        const RuleTable& r = rule_of(rule);
        require_ptr(out, "out");
        *out = wrap(step(c, r));
        return TSBP_OK;
    });
}

tsbp_status tsbp_run_with_snapshots(const tsbp_config* config, const tsbp_rule* rule, int64_t max_steps,
                                    const int64_t* snapshot_times, size_t snapshot_count, tsbp_run** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        const RuleTable& r = rule_of(rule);
        require_ptr(out, "out");
        if (snapshot_count > 0) require_ptr(snapshot_times, "snapshot_times");
        std::vector<long long> times(snapshot_times, snapshot_times + snapshot_count);
        *out = new tsbp_run{kRunTag, run_with_snapshots(c, r, times, budget(max_steps))};
        return TSBP_OK;
    });
}

tsbp_status tsbp_run_naive(const tsbp_config* config, const tsbp_rule* rule, int64_t max_steps, tsbp_run** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        const RuleTable& r = rule_of(rule);
        require_ptr(out, "out");
        *out = new tsbp_run{kRunTag, run_to_fixpoint(c, r, budget(max_steps))};
        return TSBP_OK;
    });
}

tsbp_status tsbp_run_internal(const tsbp_config* config, const tsbp_config* region, const tsbp_rule* rule,
                              int zero_to_one, int64_t max_steps, tsbp_run** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        const RuleTable& r = rule_of(rule);
        require_ptr(out, "out");
        *out = new tsbp_run{kRunTag, run_internal(c, mask_from(region, c), r, zero_to_one != 0, budget(max_steps))};
        return TSBP_OK;
    });
}

void tsbp_run_free(tsbp_run* run) {
    if (run != nullptr && run->tag == kRunTag) {
        run->tag = 0;
        delete run;
    }
}

tsbp_status tsbp_run_info(const tsbp_run* run, int64_t* steps, tsbp_halt* halt, int64_t* period) {
    return guarded([&] {
        const RunReport& r = run_of(run);
        if (steps) *steps = r.steps;
        if (halt) {
            *halt = r.halt == HaltReason::Fixpoint              ? TSBP_HALT_FIXPOINT
                    : r.halt == HaltReason::StepBudgetExhausted ? TSBP_HALT_BUDGET
                                                                : TSBP_HALT_CYCLE;
        }
        if (period) *period = r.period;
        return TSBP_OK;
    });
}

tsbp_status tsbp_run_final(const tsbp_run* run, tsbp_config** out) {
    return guarded([&] {
        const RunReport& r = run_of(run);
        require_ptr(out, "out");
        *out = wrap(r.final);
        return TSBP_OK;
    });
}

tsbp_status tsbp_run_snapshot_count(const tsbp_run* run, size_t* count) {
    return guarded([&] {
        const RunReport& r = run_of(run);
        require_ptr(count, "count");
        *count = r.snapshots.size();
        return TSBP_OK;
    });
}

tsbp_status tsbp_run_snapshot(const tsbp_run* run, size_t index, int64_t* time, tsbp_config** out) {
    return guarded([&] {
        const RunReport& r = run_of(run);
        require_ptr(out, "out");
        if (index >= r.snapshots.size()) throw Error(ErrorCode::InvalidArgument, "snapshot index out of range");
        if (time) *time = r.snapshots[index].time;
        *out = wrap(r.snapshots[index].config);
        return TSBP_OK;
    });
}

// ---- sampling and fixtures ------------------------------------------------------------

tsbp_status tsbp_sample(int width, int height, int kappa, const double* probs, const char* boundary,
                        uint64_t base_seed, uint64_t trial_index, tsbp_config** out) {
    return guarded([&] {
        require_ptr(probs, "probs");
        require_ptr(out, "out");
        if (kappa < 1 || kappa > kMaxKappa) throw Error(ErrorCode::InvalidArgument, "kappa out of range");
        InitSpec spec;
        spec.width = width;
        spec.height = height;
        spec.kappa = kappa;
        spec.probs.assign(probs, probs + kappa + 1);
        spec.boundary = boundary ? parse_boundary(boundary) : BoundaryMode::torus();
        *out = wrap(sample_product(spec, SeedSpec{base_seed, trial_index}));
        return TSBP_OK;
    });
}

tsbp_status tsbp_ignition(int half_side, int inset, int strip_gap, tsbp_config** out) {
    return guarded([&] {
        require_ptr(out, "out");
        *out = wrap(build_ignition(half_side, inset, strip_gap).config);
        return TSBP_OK;
    });
}

tsbp_status tsbp_fixture_protected(int size, int m, uint64_t seed, int64_t max_attempts, tsbp_config** config,
                                   tsbp_config** zone) {
    return guarded([&] {
        require_ptr(config, "config");
        require_ptr(zone, "zone");
        if (max_attempts < 1) throw Error(ErrorCode::InvalidArgument, "max_attempts must be positive");
        FixtureRng rng(seed);
        auto f = make_valid_protected_fixture(rng, size, m, max_attempts);
        if (!f) throw Error(ErrorCode::InvalidArgument, "no valid protected fixture within the attempt budget");
        Config z(size, size, 1, BoundaryMode::torus());
        for (std::size_t i = 0; i < z.size(); ++i) z.cells()[i] = f->zone.test(i) ? 1 : 0;
        *config = wrap(std::move(f->config));
        *zone = wrap(std::move(z));
        return TSBP_OK;
    });
}

tsbp_status tsbp_fixture_blocking(int width, int height, double p, double q, uint64_t seed, tsbp_config** out) {
    return guarded([&] {
        require_ptr(out, "out");
        *out = wrap(make_blocking_fixture(width, height, p, q, seed));
        return TSBP_OK;
    });
}

tsbp_status tsbp_fixture_fillable(tsbp_config** config, tsbp_rect* qbox, tsbp_geometry* geometry, int* diam_limit) {
    return guarded([&] {
        require_ptr(config, "config");
        FillableFixture f = make_fillable_fixture();
        if (qbox) *qbox = rect_to(f.qbox);
        if (geometry) geom_to(f.geom, geometry);
        if (diam_limit) *diam_limit = f.diam_limit;
        *config = wrap(std::move(f.config));
        return TSBP_OK;
    });
}

// ---- structure ---------------------------------------------------------------------

void tsbp_geometry_default(tsbp_geometry* geometry) {
    if (geometry != nullptr) geom_to(BoxGeometry{}, geometry);
}

tsbp_status tsbp_geometry_from_densities(double p, double q, int m, int k, tsbp_geometry* out) {
    return guarded([&] {
        require_ptr(out, "out");
        geom_to(BoxGeometry::from_densities(p, q, m, k), out);
        return TSBP_OK;
    });
}

tsbp_status tsbp_internally_spanned(const tsbp_config* config, const tsbp_config* region, int modified,
                                    int* spanned) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(spanned, "spanned");
        const SpanVariant v = modified ? SpanVariant::Modified : SpanVariant::Standard;
        *spanned = is_internally_spanned(c, mask_from(region, c), v) ? 1 : 0;
        return TSBP_OK;
    });
}

tsbp_status tsbp_al_witness(const tsbp_config* config, int j, int* found, tsbp_rect* rect) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(found, "found");
        const auto w = al_witness(c, j);
        *found = w ? 1 : 0;
        if (w && rect) *rect = rect_to(*w);
        return TSBP_OK;
    });
}

tsbp_status tsbp_blocking_zeros(const tsbp_config* config, tsbp_config** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(out, "out");
        const RegionMask mask = blocking_zeros(c);
        Config marks(c.width(), c.height(), 1, BoundaryMode::torus());
        for (std::size_t i = 0; i < marks.size(); ++i) marks.cells()[i] = mask.test(i) ? 1 : 0;
        *out = wrap(std::move(marks));
        return TSBP_OK;
    });
}

tsbp_status tsbp_find_frames(const tsbp_config* config, tsbp_rect region, int metric, tsbp_rect* rects,
                             size_t capacity, size_t* count) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(count, "count");
        if (metric != 0 && metric != 1) throw Error(ErrorCode::InvalidArgument, "metric must be 0 or 1");
        const auto frames = find_frames(c, rect_of(region), metric == 0 ? FrameMetric::Linf : FrameMetric::L1);
        *count = frames.size();
        if (capacity > 0) require_ptr(rects, "rects");
        for (std::size_t i = 0; i < frames.size() && i < capacity; ++i) rects[i] = rect_to(frames[i]);
        if (capacity < frames.size()) {
            throw Failure{TSBP_ERR_INSUFFICIENT_BUFFER, "need room for " + std::to_string(frames.size()) + " frames"};
        }
        return TSBP_OK;
    });
}

tsbp_status tsbp_elimination(const tsbp_config* config, int* hypotheses, int* eliminated) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(hypotheses, "hypotheses");
        require_ptr(eliminated, "eliminated");
        *hypotheses = elimination_hypotheses(c) ? 1 : 0;
        const long long area = static_cast<long long>(c.domain_size());
        const RunReport run = run_with_snapshots(c, make_rule("standard"), {area});
        *eliminated = run.snapshots.front().config.count(0) == 0 ? 1 : 0;
        return TSBP_OK;
    });
}

tsbp_status tsbp_p_box_crossable(const tsbp_config* config, tsbp_rect box, int variant, int* crossable) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(crossable, "crossable");
        if (variant != 0 && variant != 1) throw Error(ErrorCode::InvalidArgument, "variant must be 0 or 1");
        const CrossVariant v = variant == 0 ? CrossVariant::WithHalo : CrossVariant::NoExternal2;
        *crossable = p_box_crossable(c, rect_of(box), v) ? 1 : 0;
        return TSBP_OK;
    });
}

tsbp_status tsbp_q_box_fillable(const tsbp_config* config, tsbp_rect qbox, const tsbp_geometry* geometry,
                                int diam_limit, int eight_connected, int flags[4], tsbp_text** report) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(flags, "flags");
        const TileAdjacency adj = eight_connected ? TileAdjacency::Eight : TileAdjacency::Four;
        const FillabilityReport r = q_box_fillable(c, rect_of(qbox), geom_of(geometry), diam_limit, adj);
        flags[0] = r.f1;
        flags[1] = r.f2;
        flags[2] = r.f3;
        flags[3] = r.f4;
        if (report) *report = wrap_text(format_report(r));
        return TSBP_OK;
    });
}

tsbp_status tsbp_protected_region(const tsbp_config* config, const tsbp_config* zone, int m, const tsbp_rule* rule,
                                  int flags[3], tsbp_text** report) {
    return guarded([&] {
        const Config& c = cfg(config);
        const RuleTable& r = rule_of(rule);
        require_ptr(flags, "flags");
        const ProtectionReport rep = protected_region_report(c, mask_from(zone, c), m, r);
        flags[0] = rep.pr1;
        flags[1] = rep.pr2;
        flags[2] = rep.pr3;
        if (report) *report = wrap_text(format_report(rep));
        return TSBP_OK;
    });
}

tsbp_status tsbp_shell(const int* points, size_t point_count, int r, int flags[4], tsbp_text** report) {
    return guarded([&] {
        if (point_count > 0) require_ptr(points, "points");
        require_ptr(flags, "flags");
        std::vector<Site> set;
        set.reserve(point_count);
        for (std::size_t i = 0; i < point_count; ++i) set.push_back({points[2 * i], points[2 * i + 1]});
        const ShellReport rep = shell_report(std::move(set), r);
        flags[0] = rep.sh1;
        flags[1] = rep.sh2;
        flags[2] = rep.sh3;
        flags[3] = rep.sh4;
        if (report) *report = wrap_text(format_report(rep));
        return TSBP_OK;
    });
}

tsbp_status tsbp_supportive(const tsbp_config* config, int x, int y, const tsbp_geometry* geometry,
                            int* supportive) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(supportive, "supportive");
        *supportive = is_supportive(c, {x, y}, geom_of(geometry)) ? 1 : 0;
        return TSBP_OK;
    });
}

tsbp_status tsbp_helpful_box(const tsbp_config* config, int ux, int uy, const tsbp_geometry* geometry, int origin_x,
                             int origin_y, int* helpful) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(helpful, "helpful");
        *helpful = is_helpful_box(c, {ux, uy}, geom_of(geometry), {origin_x, origin_y}) ? 1 : 0;
        return TSBP_OK;
    });
}

// ---- experiments -----------------------------------------------------------------------

tsbp_status tsbp_sweep(const tsbp_sweep_spec* spec, tsbp_text** csv) {
    return guarded([&] {
        require_ptr(spec, "spec");
        require_ptr(csv, "csv");
        if (spec->rule_count > 0) require_ptr(spec->rules, "spec->rules");
        if (spec->cell_count > 0) {
            require_ptr(spec->p, "spec->p");
            require_ptr(spec->q, "spec->q");
        }
        std::vector<std::string> rules;
        for (std::size_t i = 0; i < spec->rule_count; ++i) {
            require_ptr(spec->rules[i], "rule name");
            rules.emplace_back(spec->rules[i]);
        }
        std::vector<SweepCell> cells;
        for (std::size_t i = 0; i < spec->cell_count; ++i) cells.push_back({spec->p[i], spec->q[i]});
        InitSpec templ;
        templ.width = spec->width;
        templ.height = spec->height;
        templ.kappa = 2;
        templ.boundary = spec->boundary ? parse_boundary(spec->boundary) : BoundaryMode::torus();
        SweepOptions options;
        options.jobs = std::max(1, spec->jobs);
        if (spec->large2_threshold >= 0) options.large2_threshold = spec->large2_threshold;
        options.max_steps = budget(spec->max_steps);
        *csv = wrap_text(to_csv(sweep(cells, templ, rules, spec->trials, spec->base_seed, options)));
        return TSBP_OK;
    });
}

tsbp_status tsbp_parse_range(const char* text, double* values, size_t capacity, size_t* count) {
    return guarded([&] {
        require_ptr(text, "text");
        require_ptr(count, "count");
        const auto v = parse_range(text);
        *count = v.size();
        if (capacity > 0) require_ptr(values, "values");
        for (std::size_t i = 0; i < v.size() && i < capacity; ++i) values[i] = v[i];
        if (capacity < v.size()) {
            throw Failure{TSBP_ERR_INSUFFICIENT_BUFFER, "need room for " + std::to_string(v.size()) + " values"};
        }
        return TSBP_OK;
    });
}

// ---- validations ------------------------------------------------------------------------

tsbp_status tsbp_check_names(tsbp_text** out) {
    return guarded([&] {
        require_ptr(out, "out");
        *out = wrap_text(joined(check_names()));
        return TSBP_OK;
    });
}

tsbp_status tsbp_check_defaults(const char* name, tsbp_check_params* out) {
    return guarded([&] {
        require_ptr(name, "name");
        require_ptr(out, "out");
        const CheckParams p = default_check_params(name);
        *out = tsbp_check_params{p.trials, p.size, p.p, p.q, p.m, p.seed, p.max_attempts};
        return TSBP_OK;
    });
}

tsbp_status tsbp_check_run(const char* name, const tsbp_check_params* params, int* passed, tsbp_text** summary) {
    return guarded([&] {
        require_ptr(name, "name");
        require_ptr(params, "params");
        require_ptr(passed, "passed");
        CheckParams p;
        p.trials = params->trials;
        p.size = params->size;
        p.p = params->p;
        p.q = params->q;
        p.m = params->m;
        p.seed = params->seed;
        p.max_attempts = params->max_attempts;
        const CheckOutcome o = run_check(name, p);
        *passed = o.passed ? 1 : 0;
        if (summary) *summary = wrap_text(format_outcome(name, o));
        return TSBP_OK;
    });
}

// ---- rendering ----------------------------------------------------------------------------

tsbp_status tsbp_render_ppm(const tsbp_config* config, tsbp_text** out) {
    return guarded([&] {
        const Config& c = cfg(config);
        require_ptr(out, "out");
        *out = wrap_text(render_ppm(c, default_palette(c.kappa())));
        return TSBP_OK;
    });
}

}  // extern "C"
