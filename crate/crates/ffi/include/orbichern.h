#ifndef ORBICHERN_H
#define ORBICHERN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum OcStatus {
  OC_STATUS_OK = 0,
  OC_STATUS_NULL_POINTER = 1,
  OC_STATUS_INVALID_UTF8 = 2,
  OC_STATUS_INVALID_ARGUMENT = 3,
  OC_STATUS_INTERNAL = 4,
  OC_STATUS_PANIC = 5,
} OcStatus;

typedef struct OcChern OcChern;

// Surface under construction: log or ambient Chern numbers plus boundary
// components and their intersection matrix.
typedef struct OcSurface OcSurface;

typedef struct OcVerdict OcVerdict;

// Outcome of [`oc_scan_minimal`].
typedef struct OcScanResult {
  // Whether some swept value satisfies the criterion.
  bool found;
  // Whether the minimal value is infinity.
  bool infinite;
  // The minimal value when `found` and not `infinite`.
  int64_t value;
} OcScanResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a
// successful call. Valid until the next call into the library.
const char *oc_last_error_message(void);

// # Safety
// `s` is null or was returned by this library and not yet freed.
void oc_string_free(char *s);

// Library version as a static string.
const char *oc_version(void);

// New surface from log Chern numbers given as `"p/q"` strings.
//
// # Safety
// String arguments are NUL-terminated; `out` is writable.
enum OcStatus oc_surface_new_log(const char *log_c1_sq, const char *log_c2, struct OcSurface **out);

// New surface from the Chern numbers of the ambient surface.
//
// # Safety
// String arguments are NUL-terminated; `out` is writable.
enum OcStatus oc_surface_new_ambient(const char *c1_sq, const char *c2, struct OcSurface **out);

// Parses the surface part of a TOML configuration.
//
// # Safety
// `text` is NUL-terminated; `out` is writable.
enum OcStatus oc_surface_from_config(const char *text, struct OcSurface **out);

// Appends a boundary component; `multiplicity_value == 0` means infinite. The
// intersection matrix grows by a zero row and column.
//
// # Safety
// `surface` is a live handle; `label` is null or NUL-terminated.
enum OcStatus oc_surface_add_component(struct OcSurface *surface,
                                       const char *label,
                                       uint32_t genus,
                                       uint64_t multiplicity_value);

// Sets `C_i . C_j` (and `C_j . C_i`).
//
// # Safety
// `surface` is a live handle.
enum OcStatus oc_surface_set_intersection(struct OcSurface *surface,
                                          uintptr_t i,
                                          uintptr_t j,
                                          int64_t value);

// # Safety
// `surface` is null or a live handle.
void oc_surface_free(struct OcSurface *surface);

// Chern numbers of the stack over the surface.
//
// # Safety
// `surface` is a live handle; `out` is writable.
enum OcStatus oc_surface_stack_chern(const struct OcSurface *surface, struct OcChern **out);

// Stack Chern numbers of a plane curve with `n` nodes and `c` cusps
// weighted by `m` in `2..=5`.
//
// # Safety
// `out` is writable.
enum OcStatus oc_plane_nc_curve_chern(int64_t d,
                                      int64_t n,
                                      int64_t c,
                                      int64_t m,
                                      struct OcChern **out);

// Stack Chern numbers of a degree `d` surface in `P^3` with `l` nodes.
//
// # Safety
// `out` is writable.
enum OcStatus oc_nodal_surface_chern(int64_t d, int64_t l, struct OcChern **out);

// `c1^2` as a newly allocated `"p/q"` string.
//
// # Safety
// `chern` is null or a live handle.
char *oc_chern_c1_sq(const struct OcChern *chern);

// `c2` as a newly allocated `"p/q"` string.
//
// # Safety
// `chern` is null or a live handle.
char *oc_chern_c2(const struct OcChern *chern);

// # Safety
// `chern` is null or a live handle.
void oc_chern_free(struct OcChern *chern);

// Exact left-hand side as a newly allocated `"p/q"` string.
//
// # Safety
// `verdict` is null or a live handle.
char *oc_verdict_lhs(const struct OcVerdict *verdict);

// Whether the left-hand side is strictly positive. False for null.
//
// # Safety
// `verdict` is null or a live handle.
bool oc_verdict_holds(const struct OcVerdict *verdict);

// Criterion tag, owned by the verdict.
//
// # Safety
// `verdict` is null or a live handle.
const char *oc_verdict_tag(const struct OcVerdict *verdict);

// Statement of the criterion, owned by the verdict.
//
// # Safety
// `verdict` is null or a live handle.
const char *oc_verdict_citation(const struct OcVerdict *verdict);

// # Safety
// `verdict` is null or a live handle.
void oc_verdict_free(struct OcVerdict *verdict);

// # Safety
// `surface` is a live handle; `out` is writable.
enum OcStatus oc_theorem_a(const struct OcSurface *surface, struct OcVerdict **out);

// Ambient form of Theorem A; the surface must have been created with
// [`oc_surface_new_ambient`].
//
// # Safety
// `surface` is a live handle; `out` is writable.
enum OcStatus oc_remark_form(const struct OcSurface *surface, struct OcVerdict **out);

// `c1^2 - c2` of the stack.
//
// # Safety
// `chern` is a live handle; `out` is writable.
enum OcStatus oc_bogomolov_stack(const struct OcChern *chern, struct OcVerdict **out);

// Two smooth plane curves; a multiplicity of `0` means infinite.
//
// # Safety
// `out` is writable.
enum OcStatus oc_plane_pair(int64_t d1,
                            int64_t d2,
                            uint64_t m1,
                            uint64_t m2,
                            struct OcVerdict **out);

// # Safety
// `out` is writable.
enum OcStatus oc_nodes_cusps(int64_t d, int64_t n, int64_t c, struct OcVerdict **out);

// # Safety
// `out` is writable.
enum OcStatus oc_nodal_surface(int64_t d, int64_t l, struct OcVerdict **out);

// `k`-jet criterion (`k` is 2 or 3) on a nodal surface.
//
// # Safety
// `out` is writable.
enum OcStatus oc_jet_h0(uint32_t k, int64_t d, int64_t l, struct OcVerdict **out);

// Multiplicities of points on `P^1`; `0` means infinite.
//
// # Safety
// `mults` points to `len` readable values; `out` is writable.
enum OcStatus oc_nevanlinna(const uint64_t *mults, uintptr_t len, struct OcVerdict **out);

// Leading coefficient of `chi` of the `k`-jet bundle, rendered like
// `85/6531840*c1^2 - 49/6531840*c2`, and its degree in `N`.
//
// # Safety
// `form_out` and `degree_out` are writable.
enum OcStatus oc_oracle_leading(uint32_t k, char **form_out, uint32_t *degree_out);

// Smallest swept value for which the family's criterion holds.
//
// `family` is one of `plane-pair`, `nodes-cusps`, `nodal-surface`,
// `nodal-jet`; `fixed` lists the other parameters as `name=value` pairs
// separated by commas (for example `"d1=5,d2=5"`); `sweep` is
// `name=start..end`, optionally followed by `,inf`.
//
// # Safety
// String arguments are NUL-terminated; `out` is writable.
enum OcStatus oc_scan_minimal(const char *family,
                              const char *fixed,
                              const char *sweep,
                              struct OcScanResult *out);

// Log Chern numbers of an ambient surface as `"p/q"` strings.
//
// # Safety
// `surface` is a live ambient handle; both out-pointers are writable.
enum OcStatus oc_surface_log_chern(const struct OcSurface *surface,
                                   char **log_c1_sq_out,
                                   char **log_c2_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBICHERN_H */
