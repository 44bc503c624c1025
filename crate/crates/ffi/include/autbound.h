#ifndef AUTBOUND_H
#define AUTBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum AutboundStatus {
  AUTBOUND_STATUS_OK = 0,
  /**
   * The computation finished with nothing to report: no applicable rule,
   * no witness recipe, no generating vector, no modular root.
   */
  AUTBOUND_STATUS_NONE = 1,
  /**
   * Null pointer, invalid UTF-8 or an out-of-range option.
   */
  AUTBOUND_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A signature or group spec did not parse.
   */
  AUTBOUND_STATUS_PARSE = 3,
  /**
   * The registry rejected the query or failed to load.
   */
  AUTBOUND_STATUS_BOUNDS = 4,
  /**
   * Group construction or a search hit a cap.
   */
  AUTBOUND_STATUS_GROUP = 5,
  /**
   * A panic was caught at the boundary.
   */
  AUTBOUND_STATUS_INTERNAL = 6,
} AutboundStatus;

typedef enum AutboundAttainability {
  AUTBOUND_ATTAINABILITY_YES = 0,
  AUTBOUND_ATTAINABILITY_NO = 1,
  AUTBOUND_ATTAINABILITY_NECESSARY_CONDITIONS_HOLD = 2,
  AUTBOUND_ATTAINABILITY_UNKNOWN = 3,
} AutboundAttainability;

/**
 * Opaque finite group.
 */
typedef struct AutboundGroup AutboundGroup;

/**
 * Opaque rule registry.
 */
typedef struct AutboundRegistry AutboundRegistry;

/**
 * A class and context at a genus. Zero means "not set" for the prime
 * fields; `pq_p`/`pq_q` are only read when `pq` is true, and zero there
 * leaves that prime open.
 */
typedef struct AutboundQuery {
  const char *class_name;
  uint64_t genus;
  bool odd;
  uint64_t min_prime;
  bool pq;
  uint64_t pq_p;
  uint64_t pq_q;
  uint64_t p_group;
  bool not_divisible_by_8;
} AutboundQuery;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *autbound_last_error(void);

/**
 * Variant name of the last failure on this thread, or null.
 */
const char *autbound_last_error_name(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void autbound_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *autbound_version(void);

/**
 * The registry compiled into the library.
 */
struct AutboundRegistry *autbound_registry_builtin(void);

/**
 * Load a registry file.
 *
 * # Safety
 * `path` must be a nul-terminated string and `out` writable.
 */
enum AutboundStatus autbound_registry_load(const char *path, struct AutboundRegistry **out);

/**
 * # Safety
 * `r` must come from this library and not have been freed. Null is ignored.
 */
void autbound_registry_free(struct AutboundRegistry *r);

/**
 * Exact upper bound on `|G|`. `out_value` receives a `p/q` string;
 * `out_rule` (may be null) the id of the governing rule.
 *
 * # Safety
 * Pointers must be valid; strings written are freed with [`autbound_string_free`].
 */
enum AutboundStatus autbound_bound(const struct AutboundRegistry *r,
                                   const struct AutboundQuery *q,
                                   char **out_value,
                                   char **out_rule);

/**
 * Whether the bound is attained at the query genus.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AutboundStatus autbound_attainable(const struct AutboundRegistry *r,
                                        const struct AutboundQuery *q,
                                        enum AutboundAttainability *out);

/**
 * A witness group spec and its signature, both as strings.
 *
 * # Safety
 * Pointers must be valid; strings written are freed with [`autbound_string_free`].
 */
enum AutboundStatus autbound_witness(const struct AutboundRegistry *r,
                                     const struct AutboundQuery *q,
                                     char **out_group,
                                     char **out_signature);

/**
 * Build a group from a spec string such as `C 7 : C 3 @ 2`, under the
 * group-size cap from the environment.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` writable.
 */
enum AutboundStatus autbound_group_from_spec(const char *spec, struct AutboundGroup **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed. Null is ignored.
 */
void autbound_group_free(struct AutboundGroup *g);

/**
 * Order of the group, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
uint64_t autbound_group_order(const struct AutboundGroup *g);

/**
 * Whether the group lies in the named class: writes 1 (yes), 0 (no) or
 * -1 (undecided under the subgroup cap).
 *
 * # Safety
 * Pointers must be valid.
 */
enum AutboundStatus autbound_group_member_of(const struct AutboundGroup *g,
                                             const char *class_name,
                                             int32_t *out);

/**
 * Search a generating vector of the group for a signature. On success
 * writes the genus of the action; `AUTBOUND_STATUS_NONE` when no vector exists.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AutboundStatus autbound_group_action_genus(const struct AutboundGroup *g,
                                                const char *signature,
                                                uint64_t *out_genus);

/**
 * Abelianization of a signature's Fuchsian group, e.g. `C2 x C6`.
 *
 * # Safety
 * Pointers must be valid; the string written is freed with [`autbound_string_free`].
 */
enum AutboundStatus autbound_abelianization(const char *signature, char **out);

/**
 * Least `b` in `[1, t)` with `t | 1 + b + b^2`; `AUTBOUND_STATUS_NONE` if there is none.
 *
 * # Safety
 * `out` must be writable.
 */
enum AutboundStatus autbound_solve_b(uint64_t t, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUTBOUND_H */
