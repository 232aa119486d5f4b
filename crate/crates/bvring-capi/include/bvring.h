/* C interface to the bvring computer algebra engine. */

#ifndef BVRING_H
#define BVRING_H

/* Generated by cbindgen; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a C API call.
typedef enum BvStatus {
  // The call succeeded.
  BV_STATUS_OK = 0,
  // A pointer argument was null.
  BV_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  BV_STATUS_INVALID_UTF8 = 2,
  // An argument was rejected (bad index, malformed rational, ...).
  BV_STATUS_INVALID_ARGUMENT = 3,
  // An expression failed to parse; see `bv_last_error`.
  BV_STATUS_PARSE_ERROR = 4,
  // An expression parsed but could not be evaluated in this ring.
  BV_STATUS_EVAL_ERROR = 5,
  // A computation exceeded the configured dimension bound.
  BV_STATUS_RESOURCE_EXCEEDED = 6,
  // An internal panic was caught at the boundary.
  BV_STATUS_PANICKED = 7,
} BvStatus;

// Opaque ring element handle.
typedef struct BvElement BvElement;

// Opaque ring parameter handle.
typedef struct BvParams BvParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the message for the most recent failure on this thread. The
// pointer stays valid until the next failing call on the same thread;
// do not free it.
const char *bv_last_error(void);

// Creates ring parameters with `n` factors, one divisor class per
// degree string, and transcendental parameter `x`.
//
// # Safety
// `degrees` must point to `num_degrees` valid C strings (or be null if
// `num_degrees == 0`); `x` must be a valid C string; `out` must be a
// valid pointer.
enum BvStatus bv_params_new(uint32_t n,
                            const char *const *degrees,
                            size_t num_degrees,
                            const char *x,
                            struct BvParams **out);

// Creates ring parameters in the geometric regime, with `x` set to
// `22` minus the number of degree strings.
//
// # Safety
// As for [`bv_params_new`], without the `x` argument.
enum BvStatus bv_params_k3(uint32_t n,
                           const char *const *degrees,
                           size_t num_degrees,
                           struct BvParams **out);

// Writes the parameter summary `{"n","rho","degrees","x"}` as JSON.
//
// # Safety
// `params` must be a live handle and `out` a valid pointer.
enum BvStatus bv_params_json(const struct BvParams *params, char **out);

// Frees a parameter handle. Null is ignored.
//
// # Safety
// `params` must be null or a handle produced by this library that has
// not been freed yet.
void bv_params_free(struct BvParams *params);

// Parses an expression in the `o/l/tau/delta` grammar and normalizes
// it in the given ring.
//
// # Safety
// `params` must be a live handle, `src` a valid C string, `out` a
// valid pointer.
enum BvStatus bv_element_parse(const struct BvParams *params,
                               const char *src,
                               struct BvElement **out);

// Frees an element handle. Null is ignored.
//
// # Safety
// `element` must be null or a handle produced by this library that
// has not been freed yet.
void bv_element_free(struct BvElement *element);

// Writes the sum of two elements of the same ring.
//
// # Safety
// `lhs` and `rhs` must be live handles and `out` a valid pointer.
enum BvStatus bv_element_add(const struct BvElement *lhs,
                             const struct BvElement *rhs,
                             struct BvElement **out);

// Writes the product of two elements of the same ring.
//
// # Safety
// `lhs` and `rhs` must be live handles and `out` a valid pointer.
enum BvStatus bv_element_mul(const struct BvElement *lhs,
                             const struct BvElement *rhs,
                             struct BvElement **out);

// Writes the canonical text form, parseable by [`bv_element_parse`].
//
// # Safety
// `element` must be a live handle and `out` a valid pointer.
enum BvStatus bv_element_text(const struct BvElement *element, char **out);

// Writes the element as JSON: `{"n","terms":[...]}` with exact
// string coefficients.
//
// # Safety
// `element` must be a live handle and `out` a valid pointer.
enum BvStatus bv_element_json(const struct BvElement *element, char **out);

// Writes the intersection pairing of two homogeneous elements of
// complementary codegree as a rational string.
//
// # Safety
// `lhs` and `rhs` must be live handles and `out` a valid pointer.
enum BvStatus bv_element_pair(const struct BvElement *lhs, const struct BvElement *rhs, char **out);

// Writes the matching-form Gram matrix on `d` points at rational `x`
// as JSON `{"d","x","dim","matrix"}`. Pass `max_dim = 0` for the
// default resource bound.
//
// # Safety
// `x` must be a valid C string and `out` a valid pointer.
enum BvStatus bv_gram_json(uint32_t d, const char *x, size_t max_dim, char **out);

// Runs the kernel-generation check on `d` points at integer `x >= 1`,
// writes the JSON report, and stores the verdict in `pass`. Pass
// `max_dim = 0` for the default resource bound.
//
// # Safety
// `out` and `pass` must be valid pointers.
enum BvStatus bv_verify_kernel_generated(uint32_t d,
                                         uint32_t x,
                                         size_t max_dim,
                                         char **out,
                                         bool *pass);

// Frees a string produced by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string produced by this library that has not
// been freed yet.
void bv_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BVRING_H */
