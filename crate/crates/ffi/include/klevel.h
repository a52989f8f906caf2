#ifndef KLEVEL_H
#define KLEVEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KlvSolveStatus {
  KlvSolveStatus_Infeasible = 0,
  KlvSolveStatus_Unbounded = 1,
  KlvSolveStatus_Finite = 2,
} KlvSolveStatus;

typedef enum KlvStatus {
  KlvStatus_Ok = 0,
  KlvStatus_NullPointer = 1,
  KlvStatus_InvalidUtf8 = 2,
  KlvStatus_Parse = 3,
  KlvStatus_Dimension = 4,
  KlvStatus_InvalidInstance = 5,
  KlvStatus_Precondition = 6,
  KlvStatus_Io = 7,
  KlvStatus_Panic = 8,
} KlvStatus;

typedef enum KlvTransform {
  KlvTransform_Scale = 0,
  KlvTransform_Forward = 1,
  KlvTransform_Gadget = 2,
} KlvTransform;

/**
 * Opaque k-level instance.
 */
typedef struct KlvInstance KlvInstance;

/**
 * Opaque solve result.
 */
typedef struct KlvReport KlvReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the library.
 */
const char *klv_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void klv_string_free(char *s);

/**
 * Parses an instance document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum KlvStatus klv_instance_from_json(const char *json, struct KlvInstance **out);

/**
 * Canonical JSON of an instance.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum KlvStatus klv_instance_to_json(const struct KlvInstance *inst, char **out);

/**
 * # Safety
 * `inst` must be NULL or a live handle; it is invalid afterwards.
 */
void klv_instance_free(struct KlvInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum KlvStatus klv_solve(const struct KlvInstance *inst, struct KlvReport **out);

/**
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum KlvStatus klv_report_status(const struct KlvReport *report, enum KlvSolveStatus *out);

/**
 * Report as JSON, with the value as `"p/q"`, `"+inf"` or `"-inf"`.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum KlvStatus klv_report_to_json(const struct KlvReport *report, char **out);

/**
 * # Safety
 * `report` must be NULL or a live handle; it is invalid afterwards.
 */
void klv_report_free(struct KlvReport *report);

/**
 * Whether a feasible point has leader objective at most `t` (a `"p/q"` string).
 *
 * # Safety
 * `inst` must be a live handle, `t` a NUL-terminated string, `answer` writable.
 */
enum KlvStatus klv_decide_val(const struct KlvInstance *inst, const char *t, bool *answer);

/**
 * # Safety
 * `inst` must be a live handle and `answer` writable.
 */
enum KlvStatus klv_decide_unb(const struct KlvInstance *inst, bool *answer);

/**
 * Feasibility and optimality of a point given as comma-separated rationals.
 *
 * # Safety
 * `inst` must be a live handle, `point` a NUL-terminated string, the outputs writable.
 */
enum KlvStatus klv_check_point(const struct KlvInstance *inst,
                               const char *point,
                               bool *feasible,
                               bool *optimal);

/**
 * Applies a transformation. `lambda` is required for [`KlvTransform::Scale`] and ignored
 * otherwise.
 *
 * # Safety
 * `inst` must be a live handle, `lambda` NULL or a NUL-terminated string, `out` writable.
 */
enum KlvStatus klv_transform(const struct KlvInstance *inst,
                             enum KlvTransform op,
                             const char *lambda,
                             struct KlvInstance **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KLEVEL_H */
