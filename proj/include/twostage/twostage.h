#ifndef TWOSTAGE_TWOSTAGE_H
#define TWOSTAGE_TWOSTAGE_H

/* C interface to the two-stage bootstrap percolation library.
 *
 * Objects are opaque handles released with their *_free function (NULL is
 * accepted). Every other function returns a tsbp_status; on failure the
 * message is available from tsbp_last_error() on the same thread until the
 * next failing call. Output handles are only written on success.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TSBP_API __declspec(dllexport)
#else
#define TSBP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsbp_status {
    TSBP_OK = 0,
    TSBP_ERR_INVALID_ARGUMENT = -1,
    TSBP_ERR_NULL_POINTER = -2,
    TSBP_ERR_PARSE = -3,
    TSBP_ERR_COORDINATE = -4,
    TSBP_ERR_DOMAIN = -5,
    TSBP_ERR_CONTRACT = -6,
    TSBP_ERR_GEOMETRY = -7,
    TSBP_ERR_INSUFFICIENT_BUFFER = -8,
    TSBP_ERR_INVALID_OBJECT = -9,
    TSBP_ERR_UNKNOWN = -100
} tsbp_status;

typedef enum tsbp_halt { TSBP_HALT_FIXPOINT = 0, TSBP_HALT_BUDGET = 1, TSBP_HALT_CYCLE = 2 } tsbp_halt;

typedef struct tsbp_config tsbp_config;
typedef struct tsbp_rule tsbp_rule;
typedef struct tsbp_run tsbp_run;
/* Owned byte string; may hold binary data (PPM images). Always NUL-terminated. */
typedef struct tsbp_text tsbp_text;

typedef struct tsbp_rect {
    int x0, y0, x1, y1; /* inclusive */
} tsbp_rect;

typedef struct tsbp_geometry {
    int pbox_side;
    int qbox_side;
    int center_side;
    int cross_arm;
    int cross_halfwidth;
    int segment_len;
    int rescale;
    int frame_window;
} tsbp_geometry;

TSBP_API const char* tsbp_version(void);
TSBP_API const char* tsbp_last_error(void);
TSBP_API const char* tsbp_status_name(tsbp_status status);

/* ---- text ---------------------------------------------------------------- */

TSBP_API const char* tsbp_text_data(const tsbp_text* text);
TSBP_API size_t tsbp_text_size(const tsbp_text* text);
TSBP_API void tsbp_text_free(tsbp_text* text);

/* ---- configurations ------------------------------------------------------ */

/* boundary: "torus", "frozen:<digit>" or "masked". */
TSBP_API tsbp_status tsbp_config_new(int width, int height, int kappa, const char* boundary, int fill,
                                     tsbp_config** out);
/* Masked configuration whose domain is the set of nonzero sites of `region`. */
TSBP_API tsbp_status tsbp_config_new_masked(int kappa, const tsbp_config* region, int fill, tsbp_config** out);
TSBP_API tsbp_status tsbp_config_parse(const char* text, size_t length, tsbp_config** out);
TSBP_API tsbp_status tsbp_config_serialize(const tsbp_config* config, tsbp_text** out);
TSBP_API tsbp_status tsbp_config_clone(const tsbp_config* config, tsbp_config** out);
TSBP_API void tsbp_config_free(tsbp_config* config);

TSBP_API tsbp_status tsbp_config_shape(const tsbp_config* config, int* width, int* height, int* kappa);
TSBP_API tsbp_status tsbp_config_boundary(const tsbp_config* config, tsbp_text** out);
TSBP_API tsbp_status tsbp_config_get(const tsbp_config* config, int x, int y, int* state);
TSBP_API tsbp_status tsbp_config_set(tsbp_config* config, int x, int y, int state);
/* Sites of the domain in `state`. */
TSBP_API tsbp_status tsbp_config_count(const tsbp_config* config, int state, int64_t* out);
TSBP_API tsbp_status tsbp_config_domain_size(const tsbp_config* config, int64_t* out);
TSBP_API tsbp_status tsbp_config_equal(const tsbp_config* a, const tsbp_config* b, int* equal);
/* Row-major copy of all cells into `cells` (capacity in entries). */
TSBP_API tsbp_status tsbp_config_cells(const tsbp_config* config, uint8_t* cells, size_t capacity, size_t* written);
/* Sets every site of the side x side square with top-left corner center - side/2. */
TSBP_API tsbp_status tsbp_config_overlay_square(tsbp_config* config, int cx, int cy, int side, int state);

/* ---- rules and dynamics -------------------------------------------------- */

TSBP_API tsbp_status tsbp_rule_names(tsbp_text** out); /* one name per line */
TSBP_API tsbp_status tsbp_rule_new(const char* name, int kappa, tsbp_rule** out);
TSBP_API void tsbp_rule_free(tsbp_rule* rule);
TSBP_API tsbp_status tsbp_rule_is_monotone(const tsbp_rule* rule, int* monotone);

TSBP_API tsbp_status tsbp_step(const tsbp_config* config, const tsbp_rule* rule, tsbp_config** out);

/* max_steps < 0 selects the default budget. Snapshot times must be non-decreasing. */
TSBP_API tsbp_status tsbp_run_with_snapshots(const tsbp_config* config, const tsbp_rule* rule, int64_t max_steps,
                                             const int64_t* snapshot_times, size_t snapshot_count, tsbp_run** out);
/* Reference runner with full sweeps. */
TSBP_API tsbp_status tsbp_run_naive(const tsbp_config* config, const tsbp_rule* rule, int64_t max_steps,
                                    tsbp_run** out);
/* Dynamics restricted to the nonzero sites of `region`. */
TSBP_API tsbp_status tsbp_run_internal(const tsbp_config* config, const tsbp_config* region, const tsbp_rule* rule,
                                       int zero_to_one, int64_t max_steps, tsbp_run** out);
TSBP_API void tsbp_run_free(tsbp_run* run);
TSBP_API tsbp_status tsbp_run_info(const tsbp_run* run, int64_t* steps, tsbp_halt* halt, int64_t* period);
TSBP_API tsbp_status tsbp_run_final(const tsbp_run* run, tsbp_config** out);
TSBP_API tsbp_status tsbp_run_snapshot_count(const tsbp_run* run, size_t* count);
TSBP_API tsbp_status tsbp_run_snapshot(const tsbp_run* run, size_t index, int64_t* time, tsbp_config** out);

/* ---- sampling and fixtures ----------------------------------------------- */

/* probs has kappa+1 entries summing to 1. */
TSBP_API tsbp_status tsbp_sample(int width, int height, int kappa, const double* probs, const char* boundary,
                                 uint64_t base_seed, uint64_t trial_index, tsbp_config** out);
TSBP_API tsbp_status tsbp_ignition(int half_side, int inset, int strip_gap, tsbp_config** out);
/* Protected-region fixture on a size x size torus: the config and its zone (kappa 1, 1 = in Z). */
TSBP_API tsbp_status tsbp_fixture_protected(int size, int m, uint64_t seed, int64_t max_attempts,
                                            tsbp_config** config, tsbp_config** zone);
TSBP_API tsbp_status tsbp_fixture_blocking(int width, int height, double p, double q, uint64_t seed,
                                           tsbp_config** out);
TSBP_API tsbp_status tsbp_fixture_fillable(tsbp_config** config, tsbp_rect* qbox, tsbp_geometry* geometry,
                                           int* diam_limit);

/* ---- structure ----------------------------------------------------------- */

TSBP_API void tsbp_geometry_default(tsbp_geometry* geometry);
TSBP_API tsbp_status tsbp_geometry_from_densities(double p, double q, int m, int k, tsbp_geometry* out);

/* modified != 0 selects the modified spanning rule. */
TSBP_API tsbp_status tsbp_internally_spanned(const tsbp_config* config, const tsbp_config* region, int modified,
                                             int* spanned);
TSBP_API tsbp_status tsbp_al_witness(const tsbp_config* config, int j, int* found, tsbp_rect* rect);
/* kappa-1 configuration marking blocking 0s with 1. */
TSBP_API tsbp_status tsbp_blocking_zeros(const tsbp_config* config, tsbp_config** out);
/* metric: 0 = l-infinity, 1 = l1. Writes up to `capacity` rects and the total count. */
TSBP_API tsbp_status tsbp_find_frames(const tsbp_config* config, tsbp_rect region, int metric, tsbp_rect* rects,
                                      size_t capacity, size_t* count);
/* hypotheses: no frame and at most two 2s in every 5x5 square meeting the lattice.
 * eliminated: no 0 left after |S| steps of the standard rule. */
TSBP_API tsbp_status tsbp_elimination(const tsbp_config* config, int* hypotheses, int* eliminated);
/* variant: 0 = with halo, 1 = no external 2. */
TSBP_API tsbp_status tsbp_p_box_crossable(const tsbp_config* config, tsbp_rect box, int variant, int* crossable);
/* flags receives F1..F4; eight_connected selects 8-adjacent circuits. report may be NULL. */
TSBP_API tsbp_status tsbp_q_box_fillable(const tsbp_config* config, tsbp_rect qbox, const tsbp_geometry* geometry,
                                         int diam_limit, int eight_connected, int flags[4], tsbp_text** report);
/* zone: nonzero sites form Z. flags receives PR1..PR3. */
TSBP_API tsbp_status tsbp_protected_region(const tsbp_config* config, const tsbp_config* zone, int m,
                                           const tsbp_rule* rule, int flags[3], tsbp_text** report);
/* points holds x0,y0,x1,y1,... (plane coordinates, y up). flags receives SH1..SH4. */
TSBP_API tsbp_status tsbp_shell(const int* points, size_t point_count, int r, int flags[4], tsbp_text** report);
TSBP_API tsbp_status tsbp_supportive(const tsbp_config* config, int x, int y, const tsbp_geometry* geometry,
                                     int* supportive);
TSBP_API tsbp_status tsbp_helpful_box(const tsbp_config* config, int ux, int uy, const tsbp_geometry* geometry,
                                      int origin_x, int origin_y, int* helpful);

/* ---- experiments --------------------------------------------------------- */

typedef struct tsbp_sweep_spec {
    int width;
    int height;
    const char* boundary;      /* NULL = torus */
    const char* const* rules;  /* rule names */
    size_t rule_count;
    const double* p;           /* one cell per entry */
    const double* q;           /* same length as p */
    size_t cell_count;
    int trials;
    uint64_t base_seed;
    int jobs;                  /* < 1 = 1 */
    int64_t large2_threshold;  /* < 0 = 750 */
    int64_t max_steps;         /* < 0 = default budget */
} tsbp_sweep_spec;

/* CSV with header, one row per (rule, cell), rules outermost. */
TSBP_API tsbp_status tsbp_sweep(const tsbp_sweep_spec* spec, tsbp_text** csv);
/* "start:stop:step" (stop excluded) or a single number. */
TSBP_API tsbp_status tsbp_parse_range(const char* text, double* values, size_t capacity, size_t* count);

/* ---- validations --------------------------------------------------------- */

typedef struct tsbp_check_params {
    int trials;
    int size;
    double p;
    double q;
    int m;
    uint64_t seed;
    int64_t max_attempts;
} tsbp_check_params;

TSBP_API tsbp_status tsbp_check_names(tsbp_text** out); /* one name per line */
TSBP_API tsbp_status tsbp_check_defaults(const char* name, tsbp_check_params* out);
/* summary: "check=<name> passed=<0|1> cases=... failures=... starved=...". */
TSBP_API tsbp_status tsbp_check_run(const char* name, const tsbp_check_params* params, int* passed,
                                    tsbp_text** summary);

/* ---- rendering ----------------------------------------------------------- */

/* Binary P6 image with the default palette. */
TSBP_API tsbp_status tsbp_render_ppm(const tsbp_config* config, tsbp_text** out);

#ifdef __cplusplus
}
#endif

#endif
