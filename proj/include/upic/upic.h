#ifndef UPIC_UPIC_H
#define UPIC_UPIC_H

/*
 * C interface to the upic library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * fallible call returns a upic_status; on failure the message is available
 * from upic_last_error() until the next call on the same thread. Strings
 * returned through char** are owned by the caller and released with
 * upic_string_free. Strings returned as const char* stay valid as long as
 * the handle they came from.
 *
 * Integer matrices cross the boundary as row-major int64 arrays.
 * Invariants of abelian groups are returned in the canonical text form
 * "0", "Z^2 x Z/2 x Z/6", ...
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UPIC_API __declspec(dllexport)
#elif defined(__GNUC__)
#define UPIC_API __attribute__((visibility("default")))
#else
#define UPIC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum upic_status {
  UPIC_OK = 0,
  UPIC_ERR_ARGUMENT = 1,   /* null pointer, bad index, malformed matrix */
  UPIC_ERR_PARSE = 2,
  UPIC_ERR_VALIDATION = 3,
  UPIC_ERR_TASK = 4,       /* an operation failed */
  UPIC_ERR_INTERNAL = 5
} upic_status;

typedef struct upic_group upic_group;
typedef struct upic_module upic_module;
typedef struct upic_map upic_map;
typedef struct upic_task upic_task;
typedef struct upic_result upic_result;

UPIC_API const char* upic_version(void);
UPIC_API const char* upic_last_error(void);
UPIC_API void upic_string_free(char* s);

/* Groups */
UPIC_API upic_status upic_group_cyclic(size_t n, upic_group** out);
/* table is order x order, row-major; generators may be NULL. */
UPIC_API upic_status upic_group_from_table(size_t order, const size_t* table, const size_t* generators,
                                           size_t generator_count, upic_group** out);
/* perms is count x degree, row-major. */
UPIC_API upic_status upic_group_from_permutations(size_t degree, const size_t* perms, size_t count,
                                                  upic_group** out);
UPIC_API size_t upic_group_order(const upic_group* g);
UPIC_API size_t upic_group_generator_count(const upic_group* g);
UPIC_API void upic_group_free(upic_group* g);

/* Modules: Z^gens / im(relations), relations gens x relation_count.
 * actions holds one gens x gens matrix per group generator, back to back. */
UPIC_API upic_status upic_module_create(const upic_group* g, size_t gens, const int64_t* relations,
                                        size_t relation_count, const int64_t* actions, upic_module** out);
UPIC_API upic_status upic_module_norm_one(const upic_group* g, upic_module** out);
UPIC_API upic_status upic_module_induced(const upic_group* g, const size_t* subgroup, size_t size,
                                         upic_module** out);
UPIC_API upic_status upic_module_invariants(const upic_module* m, char** out);
UPIC_API upic_status upic_group_cohomology(const upic_module* m, int degree, int bound, char** out);
UPIC_API void upic_module_free(upic_module* m);

/* Maps: matrix is target.gens x source.gens. */
UPIC_API upic_status upic_map_create(const upic_module* source, const upic_module* target, const int64_t* matrix,
                                     upic_map** out);
UPIC_API void upic_map_free(upic_map* f);

/* Homogeneous space data [X(G) -res-> X(H)>. */
UPIC_API upic_status upic_pic(const upic_map* res, int bound, char** out);
UPIC_API upic_status upic_brauer_a(const upic_map* res, int bound, char** out);
UPIC_API upic_status upic_dual(const upic_map* res, char** h0, char** hminus1);
UPIC_API const char* upic_pic_caveat(void);
UPIC_API const char* upic_brauer_caveat(void);

/* Task files */
typedef struct upic_run_options {
  int degree_bound;
  int oracle; /* nonzero: cross-check cohomology against oracles */
  int timing; /* nonzero: record per-task seconds in the output */
} upic_run_options;

UPIC_API void upic_run_options_init(upic_run_options* o);
UPIC_API upic_status upic_task_load_file(const char* path, upic_task** out);
UPIC_API upic_status upic_task_load_string(const char* text, upic_task** out);
UPIC_API upic_status upic_task_serialize(const upic_task* t, char** out);
UPIC_API void upic_task_free(upic_task* t);

UPIC_API upic_status upic_run(const upic_task* t, const upic_run_options* o, upic_result** out);
UPIC_API size_t upic_result_count(const upic_result* r);
UPIC_API const char* upic_result_summary(const upic_result* r, size_t index);
/* All summaries joined by "; ". */
UPIC_API const char* upic_result_joined(const upic_result* r);
UPIC_API upic_status upic_result_text(const upic_result* r, char** out);
UPIC_API upic_status upic_result_json(const upic_result* r, char** out);
/* Writes the JSON result through a temporary file and a rename. */
UPIC_API upic_status upic_result_write(const upic_result* r, const char* path);
UPIC_API void upic_result_free(upic_result* r);

/* Bundled fixtures */
UPIC_API size_t upic_fixture_count(void);
UPIC_API const char* upic_fixture_name(size_t index);
UPIC_API const char* upic_fixture_description(size_t index);
UPIC_API const char* upic_fixture_expected(size_t index);
UPIC_API upic_status upic_fixture_load(size_t index, upic_task** out);

#ifdef __cplusplus
}
#endif

#endif
