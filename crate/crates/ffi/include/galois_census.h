#ifndef GALOIS_CENSUS_H
#define GALOIS_CENSUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum GcCertainty {
  GC_CERTAINTY_CERTIFIED = 0,
  GC_CERTAINTY_HEURISTIC = 1,
  GC_CERTAINTY_UNDECIDED = 2,
} GcCertainty;

typedef enum GcMode {
  GC_MODE_MONIC = 0,
  GC_MODE_NON_MONIC = 1,
} GcMode;

/*
 Result of every fallible call.
 */
typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_INVALID_ARGUMENT = 1,
  GC_STATUS_PARSE = 2,
  GC_STATUS_UNSUPPORTED_DEGREE = 3,
  GC_STATUS_RESOURCE_LIMIT = 4,
  GC_STATUS_CONTRACT_VIOLATION = 5,
  GC_STATUS_CHECKPOINT = 6,
  GC_STATUS_INTERRUPTED = 7,
  GC_STATUS_IO = 8,
  GC_STATUS_NULL_POINTER = 9,
  GC_STATUS_PANIC = 10,
} GcStatus;

typedef struct GcCensusConfig GcCensusConfig;

typedef struct GcCensusReport GcCensusReport;

typedef struct GcGaloisLabel GcGaloisLabel;

typedef struct GcPolynomial GcPolynomial;

/*
 Summary of one Fourier transform of a splitting-type weight.
 */
typedef struct GcFourierResult {
  uint32_t k;
  uint64_t aut;
  int64_t what_zero_num;
  int64_t what_zero_den;
  double max_nonzero;
  double main_term;
  double weil_cap;
  bool weil_applicable;
  bool pass;
} GcFourierResult;

/*
 Headline counts of a census report.
 */
typedef struct GcCensusCounts {
  uint64_t total;
  uint64_t certified_sn;
  uint64_t undecided;
  uint64_t e_n_lower;
  uint64_t e_n_upper;
  uint64_t intransitive;
  uint64_t primitive_non_sn;
  uint64_t excluded_partial;
  uint64_t squarefull_exceptions;
} GcCensusCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version, static.
 */
const char *gc_version(void);

/*
 Message of the last failed call on this thread, or null. Valid until the
 next call into the library on this thread.
 */
const char *gc_last_error_message(void);

/*
 # Safety
 `s` must come from this library, or be null.
 */
void gc_string_free(char *s);

/*
 Parse text such as `x^5 - 2`.

 # Safety
 `text` must be a nul-terminated string; `out` must be writable.
 */
enum GcStatus gc_poly_parse(const char *text, struct GcPolynomial **out);

/*
 Build a polynomial from `len` coefficients, constant term first.

 # Safety
 `coeffs` must point to `len` readable values; `out` must be writable.
 */
enum GcStatus gc_poly_from_coeffs(const int64_t *coeffs, size_t len, struct GcPolynomial **out);

/*
 Degree, with 0 for constants (and for a null handle).

 # Safety
 `poly` must be a live handle or null.
 */
size_t gc_poly_degree(const struct GcPolynomial *poly);

/*
 # Safety
 `poly` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_poly_to_string(const struct GcPolynomial *poly, char **out);

/*
 Discriminant as a decimal string.

 # Safety
 `poly` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_poly_discriminant(const struct GcPolynomial *poly, char **out);

/*
 # Safety
 `poly` must come from this library, or be null.
 */
void gc_poly_free(struct GcPolynomial *poly);

/*
 Classify with Frobenius cycle types sampled below `prime_bound`
 (0 picks the default). Non-monic input goes through its monic
 normalization.

 # Safety
 `poly` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_classify(const struct GcPolynomial *poly,
                          uint64_t prime_bound,
                          struct GcGaloisLabel **out);

/*
 Group name, borrowed from the label.

 # Safety
 `label` must be a live handle or null.
 */
const char *gc_label_group_name(const struct GcGaloisLabel *label);

/*
 # Safety
 `label` must be a live handle or null.
 */
enum GcCertainty gc_label_certainty(const struct GcGaloisLabel *label);

/*
 True for reducible, inseparable or degree-dropped input.

 # Safety
 `label` must be a live handle or null.
 */
bool gc_label_is_intransitive(const struct GcGaloisLabel *label);

/*
 The full label with its evidence, as JSON.

 # Safety
 `label` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_label_to_json(const struct GcGaloisLabel *label, char **out);

/*
 # Safety
 `label` must come from this library, or be null.
 */
void gc_label_free(struct GcGaloisLabel *label);

/*
 Double discriminant for the prefix `(a_1, ..., a_(n-1))`, as a decimal
 string.

 # Safety
 `prefix` must point to `len` readable values; `out` must be writable.
 */
enum GcStatus gc_double_discriminant(size_t n, const int64_t *prefix, size_t len, char **out);

/*
 Fourier transform of `w_{p,sigma}` over monic polynomials of degree `n`.

 # Safety
 `sigma` must be a nul-terminated string; `out` must be writable.
 */
enum GcStatus gc_fourier_check(uint64_t p,
                               size_t n,
                               const char *sigma,
                               struct GcFourierResult *out);

/*
 A monic census configuration for degree `n` and height `h` with
 default options.
 */
struct GcCensusConfig *gc_census_config_new(size_t n, uint64_t h);

/*
 # Safety
 `cfg` must be a live handle.
 */
enum GcStatus gc_census_config_set_mode(struct GcCensusConfig *cfg, enum GcMode mode);

/*
 # Safety
 `cfg` must be a live handle.
 */
enum GcStatus gc_census_config_set_delta(struct GcCensusConfig *cfg, double delta);

/*
 # Safety
 `cfg` must be a live handle.
 */
enum GcStatus gc_census_config_set_prime_bound(struct GcCensusConfig *cfg, uint64_t bound);

/*
 # Safety
 `cfg` must be a live handle.
 */
enum GcStatus gc_census_config_set_shards(struct GcCensusConfig *cfg, size_t shards);

/*
 Worker threads; 0 restores the default.

 # Safety
 `cfg` must be a live handle.
 */
enum GcStatus gc_census_config_set_threads(struct GcCensusConfig *cfg, size_t threads);

/*
 Checkpoint file to resume from and update; null clears it.

 # Safety
 `cfg` must be a live handle; `path` nul-terminated or null.
 */
enum GcStatus gc_census_config_set_checkpoint(struct GcCensusConfig *cfg, const char *path);

/*
 # Safety
 `cfg` must come from this library, or be null.
 */
void gc_census_config_free(struct GcCensusConfig *cfg);

/*
 Enumerate the configured box.

 # Safety
 `cfg` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_census_run(const struct GcCensusConfig *cfg, struct GcCensusReport **out);

/*
 # Safety
 `report` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_census_report_counts(const struct GcCensusReport *report,
                                      struct GcCensusCounts *out);

/*
 The deterministic report CSV.

 # Safety
 `report` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_census_report_csv(const struct GcCensusReport *report, char **out);

/*
 # Safety
 `report` must come from this library, or be null.
 */
void gc_census_report_free(struct GcCensusReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GALOIS_CENSUS_H */
