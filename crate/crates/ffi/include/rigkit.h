#ifndef RIGKIT_H
#define RIGKIT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RkFormat {
  RK_FORMAT_GRAPH6 = 0,
  RK_FORMAT_DIMACS = 1,
  RK_FORMAT_JSON = 2,
} RkFormat;

typedef enum RkModelKind {
  RK_MODEL_KIND_ORDINARY = 0,
  RK_MODEL_KIND_INDUCED = 1,
} RkModelKind;

typedef enum RkOutcome {
  RK_OUTCOME_FOUND = 0,
  RK_OUTCOME_ABSENT = 1,
  RK_OUTCOME_UNKNOWN = 2,
} RkOutcome;

typedef enum RkStatus {
  RK_STATUS_OK = 0,
  RK_STATUS_NULL_POINTER = 1,
  RK_STATUS_INVALID_UTF8 = 2,
  RK_STATUS_PARSE = 3,
  RK_STATUS_INVALID_ARGUMENT = 4,
  RK_STATUS_SIZE_GUARD = 5,
  RK_STATUS_FAILED = 6,
  RK_STATUS_PANIC = 7,
} RkStatus;

/**
 * Opaque graph handle.
 */
typedef struct RkGraph RkGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on the same thread.
 */
const char *rk_last_error(void);

/**
 * Library version as a static string.
 */
const char *rk_version(void);

/**
 * Parses graph6, DIMACS, graph JSON or bundle JSON (format guessed).
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum RkStatus rk_graph_parse(const char *text, struct RkGraph **out);

/**
 * Builds a small named graph such as `k6`, `c4`, `p5` or `k4-sub1`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum RkStatus rk_graph_named(const char *name, struct RkGraph **out);

/**
 * Generates a family member: `apex-grid`, `pd-grid`, `bn`, `bn-prime`, `g`
 * or `gg`. `g` is ignored by families without a subdivision parameter.
 *
 * # Safety
 * `family` must be a nul-terminated string; `out` must be writable.
 */
enum RkStatus rk_graph_generate(const char *family, size_t n, size_t g, struct RkGraph **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void rk_graph_free(struct RkGraph *g);

/**
 * Vertex count, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t rk_graph_vertex_count(const struct RkGraph *g);

/**
 * Edge count, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t rk_graph_edge_count(const struct RkGraph *g);

/**
 * Serialises a graph; release the string with `rk_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum RkStatus rk_graph_write(const struct RkGraph *g, enum RkFormat format, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rk_string_free(char *s);

/**
 * Shortest cycle length; `*unbounded` is set for forests (length 0 then).
 *
 * # Safety
 * `g` must be a live handle; both outputs must be writable.
 */
enum RkStatus rk_girth(const struct RkGraph *g, size_t *length, bool *unbounded);

/**
 * Exact (induced) minor search with a node budget (0 = unlimited).
 * When `witness_json` is non-null it receives the model as JSON on
 * `RK_OUTCOME_FOUND` and null otherwise.
 *
 * # Safety
 * Handles must be live; `outcome` must be writable; `witness_json` may be null.
 */
enum RkStatus rk_find_minor(const struct RkGraph *pattern,
                            const struct RkGraph *host,
                            enum RkModelKind kind,
                            uint64_t budget,
                            enum RkOutcome *outcome,
                            char **witness_json);

/**
 * Checks a model given as JSON (`{"kind", "assignment"}`).
 *
 * # Safety
 * Handles must be live; `model_json` nul-terminated; `valid` writable.
 */
enum RkStatus rk_verify_model(const struct RkGraph *pattern,
                              const struct RkGraph *host,
                              const char *model_json,
                              bool *valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIGKIT_H */
