/* C interface to the incelab Ince-Gauss mode library. */

#ifndef INCELAB_H
#define INCELAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum IgStatus {
  IG_STATUS_OK = 0,
  IG_STATUS_NULL_POINTER = 1,
  IG_STATUS_INVALID_ARGUMENT = 2,
  IG_STATUS_INVALID_INDICES = 3,
  IG_STATUS_OVERFLOW = 4,
  IG_STATUS_GRID_MISMATCH = 5,
  IG_STATUS_NON_CONVERGENCE = 6,
  IG_STATUS_ZERO_WEIGHT = 7,
  IG_STATUS_BAD_STATE = 8,
  IG_STATUS_IO = 9,
} IgStatus;

// Mode families selectable through the C API. `Bloch` uses the `bloch_a`
// and `bloch_phi` arguments of `ig_mode_new`; the other kinds ignore them.
typedef enum IgModeKind {
  IG_MODE_KIND_EVEN = 0,
  IG_MODE_KIND_ODD = 1,
  IG_MODE_KIND_PLUS = 2,
  IG_MODE_KIND_MINUS = 3,
  IG_MODE_KIND_BLOCH = 4,
} IgModeKind;

// Opaque sampled-field handle.
typedef struct IgField IgField;

// Opaque solved-mode handle.
typedef struct IgMode IgMode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *ig_status_message(enum IgStatus status);

// Creates a solved mode handle. `bloch_a`/`bloch_phi` (radians) are read
// only when `kind` is `Bloch`. On success writes the handle to `out`.
//
// # Safety
// `out` must be a valid pointer. A returned handle must be released with
// [`ig_mode_free`].
enum IgStatus ig_mode_new(uint32_t p,
                          uint32_t m,
                          double ellipticity,
                          enum IgModeKind kind,
                          double bloch_a,
                          double bloch_phi,
                          double waist,
                          struct IgMode **out);

// Releases a mode handle; a null pointer is a no-op.
//
// # Safety
// `mode` must be null or a pointer previously returned by [`ig_mode_new`]
// that has not been freed yet.
void ig_mode_free(struct IgMode *mode);

// Evaluates the mode amplitude at one point.
//
// # Safety
// All pointers must be valid.
enum IgStatus ig_mode_eval(const struct IgMode *mode,
                           double x,
                           double y,
                           double *out_re,
                           double *out_im);

// Renders the mode on an N×N grid of half-extent `half_extent` (pass 0 or a
// negative value for the order-adapted default, and 0 samples for the
// default 512).
//
// # Safety
// `mode` and `out` must be valid pointers; the returned field must be
// released with [`ig_field_free`].
enum IgStatus ig_mode_render(const struct IgMode *mode,
                             double half_extent,
                             size_t samples,
                             bool normalize,
                             struct IgField **out);

// Releases a field handle; a null pointer is a no-op.
//
// # Safety
// `field` must be null or a pointer previously returned by this library
// that has not been freed yet.
void ig_field_free(struct IgField *field);

// Samples per axis of a rendered field (0 on null input).
//
// # Safety
// `field` must be null or a valid field handle.
size_t ig_field_samples(const struct IgField *field);

// Grid half-extent of a rendered field (0 on null input).
//
// # Safety
// `field` must be null or a valid field handle.
double ig_field_half_extent(const struct IgField *field);

// Copies the field amplitudes into `out` as row-major interleaved
// (re, im) doubles; `len` must be exactly `2·N·N`.
//
// # Safety
// `out` must point to `len` writable doubles.
enum IgStatus ig_field_copy_values(const struct IgField *field, double *out, size_t len);

// Discrete L² inner product ⟨A|B⟩ of two fields on the same grid.
//
// # Safety
// All pointers must be valid.
enum IgStatus ig_field_inner_product(const struct IgField *a,
                                     const struct IgField *b,
                                     double *out_re,
                                     double *out_im);

// Locates phase singularities. Pass a negative `amp_threshold` for the
// default (1e-3 of the peak amplitude). Writes up to `capacity` triples
// (x, y, charge) into `out_xyq` (unless it is null) and always stores the
// total count in `out_count`.
//
// # Safety
// `out_xyq` must be null or point to `3·capacity` writable doubles;
// `out_count` must be valid.
enum IgStatus ig_field_find_singularities(const struct IgField *field,
                                          double amp_threshold,
                                          double *out_xyq,
                                          size_t capacity,
                                          size_t *out_count);

// Witness ⟨W⟩ and steering value S of a 2⊗2 density matrix passed as 16
// row-major complex entries (32 interleaved doubles).
//
// # Safety
// `rho` must point to 32 readable doubles; out-pointers must be valid.
enum IgStatus ig_witness_steering(const double *rho, double *out_w, double *out_s);

// Dimensionality correlation f(ρ) of a 3⊗3 density matrix passed as 81
// row-major complex entries (162 interleaved doubles).
//
// # Safety
// `rho` must point to 162 readable doubles; `out_f` must be valid.
enum IgStatus ig_f_rho(const double *rho, double *out_f);

// Classifies an f(ρ) value: 0 separable-compatible, 1 2d-entangled-
// compatible, 2 at-least-3d-entangled.
int32_t ig_classify_dimension(double f_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INCELAB_H */
