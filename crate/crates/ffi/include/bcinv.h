#ifndef BCINV_H
#define BCINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BcinvStatus {
  BCINV_STATUS_OK = 0,
  // The requested inverse does not exist.
  BCINV_STATUS_NOT_FOUND = 1,
  // Null pointer, wrong argument count, or non-UTF-8 text.
  BCINV_STATUS_INVALID_ARGUMENT = 2,
  // Malformed ring spec, element literal or theorem id.
  BCINV_STATUS_PARSE_ERROR = 3,
  BCINV_STATUS_CARDINALITY_EXCEEDED = 4,
  // Element index outside the ring.
  BCINV_STATUS_OUT_OF_RANGE = 5,
  // A precondition such as idempotency of `e` did not hold.
  BCINV_STATUS_PRECONDITION = 6,
  // The engine found an inconsistency; please report it.
  BCINV_STATUS_INTERNAL = 7,
  BCINV_STATUS_PANIC = 8,
  // A verify run completed and at least one checker failed.
  BCINV_STATUS_CHECK_FAILED = 9,
} BcinvStatus;

typedef enum BcinvKind {
  // args: a, b, c
  BCINV_KIND_BC = 0,
  // args: a, b, c
  BCINV_KIND_HYBRID = 1,
  // args: a, b, c
  BCINV_KIND_ANNIHILATOR = 2,
  // args: a
  BCINV_KIND_GROUP = 3,
  // args: a
  BCINV_KIND_DRAZIN = 4,
  // args: a, e, f
  BCINV_KIND_BOTT_DUFFIN = 5,
  // args: a, p, q
  BCINV_KIND_IMAGE_KERNEL = 6,
} BcinvKind;

// Opaque ring handle.
typedef struct BcinvRing BcinvRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *bcinv_version(void);

// Message for the last failing call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *bcinv_last_error(void);

// Builds a ring from a spec such as `zn:6` or `mat:2:zn:2`.
// `cardinality_cap` of 0 selects the default cap.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` valid for one write.
enum BcinvStatus bcinv_ring_new(const char *spec, uint64_t cardinality_cap, struct BcinvRing **out);

// # Safety
// `ring` must be null or a handle from [`bcinv_ring_new`] not yet freed.
void bcinv_ring_free(struct BcinvRing *ring);

// Number of elements, or 0 for a null handle.
//
// # Safety
// `ring` must be null or a live handle.
uint32_t bcinv_ring_order(const struct BcinvRing *ring);

// Index of the unit element, or 0 for a null handle.
//
// # Safety
// `ring` must be null or a live handle.
uint32_t bcinv_ring_one(const struct BcinvRing *ring);

// # Safety
// `ring` live, `literal` NUL-terminated, `out` valid for one write.
enum BcinvStatus bcinv_parse_element(const struct BcinvRing *ring,
                                     const char *literal,
                                     uint32_t *out);

// Writes a newly allocated literal for `x`; release it with
// [`bcinv_string_free`].
//
// # Safety
// `ring` live, `out` valid for one write.
enum BcinvStatus bcinv_format_element(const struct BcinvRing *ring, uint32_t x, char **out);

// # Safety
// `text` must be null or a string returned by this library, not yet freed.
void bcinv_string_free(char *text);

// # Safety
// `ring` live, `out` valid for one write.
enum BcinvStatus bcinv_add(const struct BcinvRing *ring, uint32_t x, uint32_t y, uint32_t *out);

// # Safety
// `ring` live, `out` valid for one write.
enum BcinvStatus bcinv_mul(const struct BcinvRing *ring, uint32_t x, uint32_t y, uint32_t *out);

// # Safety
// `ring` live, `out` valid for one write.
enum BcinvStatus bcinv_neg(const struct BcinvRing *ring, uint32_t x, uint32_t *out);

// # Safety
// `ring` live, `out` valid for one write.
enum BcinvStatus bcinv_is_unit(const struct BcinvRing *ring, uint32_t x, bool *out);

// # Safety
// `ring` live, `out` valid for one write.
enum BcinvStatus bcinv_is_idempotent(const struct BcinvRing *ring, uint32_t x, bool *out);

// # Safety
// `ring` live, `out` valid for one write.
enum BcinvStatus bcinv_is_regular(const struct BcinvRing *ring, uint32_t x, bool *out);

// Computes an inverse of the given kind. `args` holds the element indices
// listed on [`BcinvKind`]. Returns `Ok` with the value in `out`, or
// `NotFound` when no such inverse exists (`out` untouched).
//
// # Safety
// `ring` live, `args` valid for `nargs` reads, `out` valid for one write.
enum BcinvStatus bcinv_inverse(const struct BcinvRing *ring,
                               enum BcinvKind kind,
                               const uint32_t *args,
                               size_t nargs,
                               uint32_t *out);

// Runs theorem checkers (`theorem` is an id or `all`) and writes the
// structured records, one JSON object per line without the header, to a
// new string in `json_out` (free with [`bcinv_string_free`]). Returns `Ok`
// when every checker passes and `CheckFailed` when any fails.
//
// # Safety
// `ring` live, `theorem` NUL-terminated, `json_out` valid for one write.
enum BcinvStatus bcinv_verify(const struct BcinvRing *ring,
                              const char *theorem,
                              uint32_t threads,
                              char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BCINV_H */
