#ifndef CEDGA_H
#define CEDGA_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CedgaStatus {
  CEDGA_STATUS_OK = 0,
  CEDGA_STATUS_NULL_POINTER = 1,
  CEDGA_STATUS_INVALID_UTF8 = 2,
  CEDGA_STATUS_PARSE = 3,
  // A mathematical failure: d^2 != 0, a failed comparison, bad cap data.
  CEDGA_STATUS_MATH = 4,
  // The augmentation search exceeded its bit budget.
  CEDGA_STATUS_BUDGET = 5,
  // A panic was caught at the boundary.
  CEDGA_STATUS_INTERNAL = 6,
} CedgaStatus;

// Opaque algebra handle.
typedef struct CedgaDga CedgaDga;

typedef struct CedgaPipelineResult {
  bool pass;
  // Meaningful only when `pass`.
  int64_t shift;
  size_t cthulhu_total;
  size_t rhom_total;
} CedgaPipelineResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a JSON algebra document.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum CedgaStatus cedga_dga_from_json(const char *json, struct CedgaDga **out);

// Loads a built-in algebra: `unknot`, `trefoil`, `hopf-attaching`, `synthetic-N`.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum CedgaStatus cedga_dga_from_registry(const char *name, struct CedgaDga **out);

// # Safety
// `h` must come from this library and not be freed twice. Null is ignored.
void cedga_dga_free(struct CedgaDga *h);

// Sets `*violations` to the number of validation failures.
//
// # Safety
// `h` must be a live handle; `violations` must be writable.
enum CedgaStatus cedga_dga_check(const struct CedgaDga *h, size_t *violations);

// # Safety
// `h` must be a live handle or null; null gives 0.
size_t cedga_generator_count(const struct CedgaDga *h);

// Counts augmentations of the algebra with at most `max_bits` degree-0 generators.
//
// # Safety
// `h` must be a live handle; `count` must be writable.
enum CedgaStatus cedga_augmentation_count(const struct CedgaDga *h, size_t max_bits, size_t *count);

// Compares the Cthulhu complex with RHom for caps of `k0` and `k1` copies
// of every idempotent, using augmentation indices `aug0` and `aug1`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum CedgaStatus cedga_pipeline_compare(const struct CedgaDga *h,
                                        uint32_t k0,
                                        uint32_t k1,
                                        size_t aug0,
                                        size_t aug1,
                                        struct CedgaPipelineResult *out);

// Canonical JSON; free the result with `cedga_string_free`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum CedgaStatus cedga_dga_to_json(const struct CedgaDga *h, char **out);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void cedga_string_free(char *s);

// Message of the last failure on this thread, or null. Owned by the
// library and valid until the next failing call on the same thread.
const char *cedga_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CEDGA_H */
