/* crnb: forward/backward bisimulation reduction of mass-action CRNs.
 *
 * C interface over opaque handles. Every fallible call returns a
 * crnb_status; on failure crnb_last_error() describes the problem (thread
 * local, valid until the next call on the same thread). Strings returned
 * through char** are heap-allocated and must be released with
 * crnb_string_free(). Rates and concentrations cross the boundary as
 * decimal or "p/q" text so that no precision is lost.
 */
#ifndef CRNB_H
#define CRNB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CRNB_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CRNB_API __attribute__((visibility("default")))
#else
#define CRNB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crnb_status {
  CRNB_OK = 0,
  CRNB_ERR_PARSE = 1,
  CRNB_ERR_PARTITION = 2,
  CRNB_ERR_NOT_BISIMULATION = 3,
  CRNB_ERR_PRECONDITION = 4,
  CRNB_ERR_INTEGRATION = 5,
  CRNB_ERR_ARGUMENT = 6,
  CRNB_ERR_IO = 7,
  CRNB_ERR_INTERNAL = 8
} crnb_status;

typedef enum crnb_mode { CRNB_FORWARD = 0, CRNB_BACKWARD = 1 } crnb_mode;

typedef enum crnb_property {
  CRNB_PROP_BISIM_FB = 0,
  CRNB_PROP_BISIM_BB = 1,
  CRNB_PROP_ORD_LUMP = 2,
  CRNB_PROP_EXACT_LUMP = 3
} crnb_property;

typedef struct crnb_model crnb_model;
typedef struct crnb_partition crnb_partition;

CRNB_API const char* crnb_version(void);
CRNB_API const char* crnb_last_error(void);
CRNB_API const char* crnb_status_name(crnb_status status);
CRNB_API void crnb_string_free(char* s);

/* ---- models ------------------------------------------------------------ */

/* Native text format. With validate == 0, reactions violating the
 * elementary/positive-rate restrictions are kept (see crnb_model_validate). */
CRNB_API crnb_status crnb_model_parse(const char* text, int validate, crnb_model** out);
/* BioNetGen .net subset. */
CRNB_API crnb_status crnb_model_import_net(const char* text, crnb_model** out);
/* Reads a file; ".net" files go through the importer. */
CRNB_API crnb_status crnb_model_load(const char* path, int validate, crnb_model** out);

CRNB_API crnb_status crnb_model_running_example(crnb_model** out);
CRNB_API crnb_status crnb_model_two_state(const char* a1, const char* a2, crnb_model** out);
/* rates: NULL for the defaults, otherwise six rate literals (E-bind,
 * E-unbind, E-cat, F-bind, F-unbind, F-cat). Carries initial conditions. */
CRNB_API crnb_status crnb_model_multisite(unsigned sites, const char* const* rates, crnb_model** out);
CRNB_API crnb_status crnb_model_random(uint64_t seed, size_t species, size_t reactions,
                                       int symmetric, crnb_model** out);

CRNB_API void crnb_model_free(crnb_model* model);

CRNB_API size_t crnb_model_species_count(const crnb_model* model);
CRNB_API size_t crnb_model_reaction_count(const crnb_model* model);
/* Borrowed; valid while the model lives. NULL when out of range. */
CRNB_API const char* crnb_model_species_name(const crnb_model* model, size_t index);
CRNB_API int crnb_model_has_init(const crnb_model* model);
/* Lines "X = value" (or "init: X = value"); unmentioned species get 0. */
CRNB_API crnb_status crnb_model_set_init(crnb_model* model, const char* text);

/* One violation per line in *report; *count violations. */
CRNB_API crnb_status crnb_model_validate(const crnb_model* model, char** report, size_t* count);
CRNB_API crnb_status crnb_model_serialize(const crnb_model* model, char** out);
CRNB_API crnb_status crnb_model_emit_odes(const crnb_model* model, char** out);

/* ---- partitions -------------------------------------------------------- */

/* One comma-separated block per line; unmentioned species form a final block. */
CRNB_API crnb_status crnb_partition_parse(const crnb_model* model, const char* text,
                                          crnb_partition** out);
CRNB_API crnb_status crnb_partition_trivial(const crnb_model* model, crnb_partition** out);
CRNB_API crnb_status crnb_partition_discrete(const crnb_model* model, crnb_partition** out);
/* Blocks of species with equal initial values. CRNB_ERR_PRECONDITION if the
 * model has no initial conditions. */
CRNB_API crnb_status crnb_partition_from_inits(const crnb_model* model, crnb_partition** out);
/* Partition given by "block:" lines of the model; *out is NULL if none. */
CRNB_API crnb_status crnb_partition_embedded(const crnb_model* model, crnb_partition** out);
CRNB_API void crnb_partition_free(crnb_partition* partition);

CRNB_API size_t crnb_partition_block_count(const crnb_partition* partition);
CRNB_API size_t crnb_partition_block_size(const crnb_partition* partition, size_t block);
CRNB_API int crnb_partition_equal(const crnb_partition* a, const crnb_partition* b);
CRNB_API crnb_status crnb_partition_format(const crnb_model* model, const crnb_partition* partition,
                                           char** out);

/* ---- refinement and reduction ----------------------------------------- */

typedef struct crnb_refine_stats {
  size_t rounds;
  uint64_t predicate_calls;
  uint64_t rate_evaluations;
} crnb_refine_stats;

/* Coarsest bisimulation of the given mode refining `initial`. pairwise != 0
 * uses the pairwise quotient sweep (slower; fills predicate counters). */
CRNB_API crnb_status crnb_refine(const crnb_model* model, const crnb_partition* initial,
                                 crnb_mode mode, int pairwise, crnb_partition** out,
                                 crnb_refine_stats* stats);

typedef struct crnb_reduce_info {
  uint64_t steps;    /* instrumented reduction step count */
  double step_bound; /* c * |R| * |S| * (log2|R| + log2|S|) */
} crnb_reduce_info;

/* Quotient CRN. Initial conditions, if any, are projected (block sums for
 * forward, representative values for backward). annotate != 0 adds header
 * comments describing the reduction. */
CRNB_API crnb_status crnb_reduce(const crnb_model* model, const crnb_partition* partition,
                                 crnb_mode mode, int annotate, crnb_model** out,
                                 crnb_reduce_info* info);

/* *holds is 1 or 0; on 0, *detail (if requested) names a counterexample. */
CRNB_API crnb_status crnb_check(const crnb_model* model, const crnb_partition* partition,
                                crnb_property property, int* holds, char** detail);

/* Lumped ODEs: block-sum variables (forward) or representatives (backward). */
CRNB_API crnb_status crnb_emit_lumped_odes(const crnb_model* model, const crnb_partition* partition,
                                           crnb_mode mode, char** out);

/* ---- numerics ---------------------------------------------------------- */

typedef struct crnb_sim_options {
  double t_end;
  double rtol;
  double atol;
  size_t output_points;
} crnb_sim_options;

CRNB_API void crnb_sim_options_default(crnb_sim_options* options);

/* CSV trajectory ("time,<species>..."). Requires initial conditions. */
CRNB_API crnb_status crnb_simulate(const crnb_model* model, const crnb_sim_options* options,
                                   char** csv);

typedef struct crnb_compare_report {
  crnb_mode mode;
  double max_error;     /* forward: block-sum error */
  double max_spread;    /* backward: within-block spread */
  double max_deviation; /* backward: species vs reduced representative */
  int passed;
  size_t reduced_species;
  size_t reduced_reactions;
} crnb_compare_report;

/* Integrates the original and reduced systems and compares them against tol. */
CRNB_API crnb_status crnb_compare(const crnb_model* model, const crnb_partition* partition,
                                  crnb_mode mode, const crnb_sim_options* options, double tol,
                                  crnb_compare_report* report);

#ifdef __cplusplus
}
#endif

#endif /* CRNB_H */
