#ifndef DCA_H
#define DCA_H

/* Generated from the dca-ffi crate; regenerate with `cargo build -p dca-ffi --features gen-header`. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum DcaStatus {
  /**
   * The call succeeded.
   */
  DcaStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  DcaStatus_NullPointer = 1,
  /**
   * The input failed to parse or violated a precondition.
   */
  DcaStatus_InvalidInput = 2,
  /**
   * A size cap was exceeded.
   */
  DcaStatus_CapExceeded = 3,
  /**
   * A checked hypothesis does not hold for the input.
   */
  DcaStatus_HypothesisViolated = 4,
  /**
   * An internal invariant failed.
   */
  DcaStatus_Internal = 5,
  /**
   * A panic was caught at the boundary.
   */
  DcaStatus_Panic = 6,
} DcaStatus;

/**
 * Opaque handle to a set family.
 */
typedef struct DcaFamily DcaFamily;

/**
 * Opaque handle to a set function.
 */
typedef struct DcaFunction DcaFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the underlying library as a static string.
 */
const char *dca_version(void);

/**
 * Message describing the last error on this thread, or null if the
 * last call succeeded. The pointer is owned by the library and is
 * valid until the next call on the same thread.
 */
const char *dca_last_error(void);

/**
 * Releases a string returned through a `char**` out-parameter.
 *
 * # Safety
 * `text` must be null or a pointer previously returned by this
 * library and not yet freed.
 */
void dca_string_free(char *text);

/**
 * Parses a JSON function document into a new handle. `max_n` of zero
 * keeps the default ground-set cap.
 *
 * # Safety
 * `text` must be a valid nul-terminated string; `out` must be a valid
 * pointer.
 */
enum DcaStatus dca_function_parse_json(const char *text, uint8_t max_n, struct DcaFunction **out);

/**
 * Releases a function handle.
 *
 * # Safety
 * `f` must be null or an unfreed handle from this library.
 */
void dca_function_free(struct DcaFunction *f);

/**
 * Number of ground-set elements, or 0 when the handle is null.
 *
 * # Safety
 * `f` must be null or a valid handle.
 */
uint8_t dca_function_n(const struct DcaFunction *f);

/**
 * Evaluates the function on the subset encoded by `bits` (bit k set
 * means element k+1 is in the subset). Minus infinity comes back as
 * the IEEE negative infinity.
 *
 * # Safety
 * `f` and `out` must be valid pointers.
 */
enum DcaStatus dca_function_eval(const struct DcaFunction *f, uint32_t bits, double *out);

/**
 * Serializes the function as a JSON document.
 *
 * # Safety
 * `f` and `out` must be valid pointers; release the string with
 * `dca_string_free`.
 */
enum DcaStatus dca_function_emit_json(const struct DcaFunction *f, char **out);

/**
 * Checks one function axiom by name (for example "MNAT_EXC"). On
 * success `*out_passed` holds the verdict and, when `out_report_json`
 * is non-null, `*out_report_json` holds the full report.
 *
 * # Safety
 * `f`, `axiom`, and `out_passed` must be valid pointers;
 * `out_report_json` may be null.
 */
enum DcaStatus dca_function_check(const struct DcaFunction *f,
                                  const char *axiom,
                                  bool *out_passed,
                                  char **out_report_json);

/**
 * Lifts the function by `s` auxiliary elements into a new handle.
 *
 * # Safety
 * `f` and `out` must be valid pointers.
 */
enum DcaStatus dca_function_lift(const struct DcaFunction *f, uint8_t s, struct DcaFunction **out);

/**
 * Adds the linear function of `prices` (length `n`) into a new handle.
 *
 * # Safety
 * `f`, `prices`, and `out` must be valid pointers; `prices` must have
 * `len` readable elements.
 */
enum DcaStatus dca_function_add_linear(const struct DcaFunction *f,
                                       const double *prices,
                                       uintptr_t len,
                                       struct DcaFunction **out);

/**
 * Concave conjugate at one price vector: `*out_value` gets
 * `max_Z { f(Z) - p(Z) }` and `*out_argmax` the bits of the first
 * maximizer. The value is negative infinity only when the effective
 * domain is empty.
 *
 * # Safety
 * `f`, `prices`, `out_value`, and `out_argmax` must be valid
 * pointers; `prices` must have `len` readable elements.
 */
enum DcaStatus dca_function_conjugate(const struct DcaFunction *f,
                                      const double *prices,
                                      uintptr_t len,
                                      double *out_value,
                                      uint32_t *out_argmax);

/**
 * Parses a JSON family document into a new handle. `max_n` of zero
 * keeps the default ground-set cap.
 *
 * # Safety
 * `text` must be a valid nul-terminated string; `out` must be a valid
 * pointer.
 */
enum DcaStatus dca_family_parse_json(const char *text, uint8_t max_n, struct DcaFamily **out);

/**
 * Releases a family handle.
 *
 * # Safety
 * `fam` must be null or an unfreed handle from this library.
 */
void dca_family_free(struct DcaFamily *fam);

/**
 * Checks one family axiom by name; "BNAT_EXC_MS" selects the strong
 * multiple form. Same out-parameter contract as `dca_function_check`.
 *
 * # Safety
 * `fam`, `axiom`, and `out_passed` must be valid pointers;
 * `out_report_json` may be null.
 */
enum DcaStatus dca_family_check(const struct DcaFamily *fam,
                                const char *axiom,
                                bool *out_passed,
                                char **out_report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DCA_H */
