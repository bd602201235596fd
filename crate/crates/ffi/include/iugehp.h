#ifndef IUGEHP_H
#define IUGEHP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define IUGEHP_VARIANT_PRINTED 0

#define IUGEHP_VARIANT_RESCALED 1

#define IUGEHP_ROUTE_SUM 0

#define IUGEHP_ROUTE_QUADRATURE 1

#define IUGEHP_ROUTE_CLOSED 2

// Result code of every fallible call.
typedef enum IugehpStatus {
  IUGEHP_STATUS_OK = 0,
  IUGEHP_STATUS_NULL_POINTER = 1,
  IUGEHP_STATUS_INVALID_ARGUMENT = 2,
  IUGEHP_STATUS_DOMAIN = 3,
  IUGEHP_STATUS_NO_BOUND_STATE = 4,
  IUGEHP_STATUS_NO_CONVERGENCE = 5,
  IUGEHP_STATUS_PANIC = 6,
} IugehpStatus;

// Opaque system handle.
typedef struct IugehpSystem IugehpSystem;

// Potential parameters in the engine's natural units.
typedef struct IugehpPotential {
  double a;
  double b;
  double c;
  double d;
  double g;
  double k;
  double alpha;
  double delta;
  double tau;
} IugehpPotential;

// Thermodynamic functions at one inverse temperature.
typedef struct IugehpThermo {
  double z;
  double f;
  double u;
  double s;
  double c;
  double m;
  double chi;
  // Non-zero when `m` and `chi` come from one-sided field differences.
  int32_t one_sided_field;
} IugehpThermo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL if there is none.
// The pointer stays valid until the next failing call on the same thread.
const char *iugehp_last_error(void);

void iugehp_clear_error(void);

// Library version as a static NUL-terminated string.
const char *iugehp_version(void);

// Creates a system in natural units with the given fields.
//
// # Safety
// `potential` must point to a valid `IugehpPotential` and `out` to writable
// storage for one pointer.
enum IugehpStatus iugehp_system_new(const struct IugehpPotential *potential,
                                    double b_field,
                                    double phi_ab,
                                    struct IugehpSystem **out);

// Creates a system from a JSON run configuration (the CLI's `--config`
// format). Only the `potential`, `fields` and `units` sections are used.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable storage for one
// pointer.
enum IugehpStatus iugehp_system_from_json(const char *json, struct IugehpSystem **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `system` must be NULL or a handle from this library not yet freed.
void iugehp_system_free(struct IugehpSystem *system);

// Energy `E_{n,m}` for one of the `IUGEHP_VARIANT_*` mappings.
//
// # Safety
// `system` must be a live handle and `out` writable.
enum IugehpStatus iugehp_energy(const struct IugehpSystem *system,
                                uint32_t n,
                                int32_t m,
                                int32_t energy_variant,
                                double *out);

// Dimensionless eigenvalue `ε_{n,m}`.
//
// # Safety
// `system` must be a live handle and `out` writable.
enum IugehpStatus iugehp_epsilon(const struct IugehpSystem *system,
                                 uint32_t n,
                                 int32_t m,
                                 double *out);

// Number of bound radial levels for `m`.
//
// # Safety
// `system` must be a live handle and `out` writable.
enum IugehpStatus iugehp_bound_count(const struct IugehpSystem *system, int32_t m, uint32_t *out);

// Partition function at inverse temperature `beta` over the levels of `m`.
// The quadrature route integrates `exp(−βE)`; the closed route evaluates the
// printed closed form and returns its real part.
//
// # Safety
// `system` must be a live handle and `out` writable.
enum IugehpStatus iugehp_partition(const struct IugehpSystem *system,
                                   double beta,
                                   int32_t m,
                                   int32_t energy_variant,
                                   int32_t partition_route,
                                   double *out);

// `Z, F, U, S, C, M, χ` at inverse temperature `beta`.
//
// # Safety
// `system` must be a live handle and `out` writable.
enum IugehpStatus iugehp_thermo(const struct IugehpSystem *system,
                                double beta,
                                int32_t m,
                                int32_t energy_variant,
                                int32_t thermo_route,
                                struct IugehpThermo *out);

// Complex error function.
//
// # Safety
// `out_re` and `out_im` must be writable.
enum IugehpStatus iugehp_erf(double re, double im, double *out_re, double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IUGEHP_H */
