/* C interface to the structured-matrix spectral statistics library.
 *
 * Every function returning int yields STRMAT_OK or an error code; the
 * message behind the most recent failure on the calling thread is available
 * through strmat_last_error().  Objects returned through out-parameters are
 * owned by the caller and released with the matching _free function.
 */
#ifndef STRMAT_H
#define STRMAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define STRMAT_OK 0
#define STRMAT_EINVAL 2  /* invalid argument or malformed input */
#define STRMAT_EIO 3     /* file system failure */
#define STRMAT_ENUMERIC 4 /* numerical failure (solver did not converge, ...) */

typedef struct strmat_batch strmat_batch;
typedef struct strmat_table strmat_table;

const char* strmat_version(void);
const char* strmat_rng_name(void);
const char* strmat_last_error(void);
uint64_t strmat_fnv1a64(const void* data, size_t len);

/* Ensemble names: toeplitz-real, toeplitz-complex, hankel, th-special-plus,
 * th-special-minus, th-independent-real, th-independent-complex, goe, gue. */

/* Diagonalizes `count` seeded realizations (workers = 0 picks a default;
 * results never depend on the worker count). */
int strmat_generate(const char* ensemble, size_t dim, size_t count, uint64_t seed,
                    size_t workers, strmat_batch** out);

/* Same, but streams results into `dir` (meta.json + eigenvalues.f64,
 * plus vectors.c128 when with_vectors is nonzero). */
int strmat_generate_to_dir(const char* ensemble, size_t dim, size_t count, uint64_t seed,
                           size_t workers, const char* dir, int with_vectors,
                           strmat_batch** out);

int strmat_batch_save(const strmat_batch* b, const char* dir);
int strmat_batch_load(const char* dir, strmat_batch** out);
void strmat_batch_free(strmat_batch* b);

size_t strmat_batch_dim(const strmat_batch* b);
size_t strmat_batch_count(const strmat_batch* b);
double strmat_batch_sigma(const strmat_batch* b);
uint64_t strmat_batch_seed(const strmat_batch* b);
const char* strmat_batch_ensemble(const strmat_batch* b);
/* canonical manifest JSON (owned by the batch) and its FNV-1a 64 hash */
const char* strmat_batch_manifest(const strmat_batch* b);
uint64_t strmat_batch_manifest_hash(const strmat_batch* b);
/* borrow the sorted eigenvalues of one realization */
int strmat_batch_eigenvalues(const strmat_batch* b, size_t realization, const double** row,
                             size_t* len);

/* Analyses; each returns a column-named table of doubles. */
int strmat_density(const strmat_batch* b, size_t bins, strmat_table** out);
int strmat_nn_dist(const strmat_batch* b, size_t n_max, double bin_width, strmat_table** out);
int strmat_fit_gamma(const strmat_batch* b, size_t n_max, strmat_table** out);
int strmat_form_factor(const strmat_batch* b, double tau_min, double tau_max, double tau_step,
                       int window_only, strmat_table** out);
int strmat_number_variance(const strmat_batch* b, double l_max, strmat_table** out);
/* plateau average of the empirical form factor over [~2/sqrt(N*M), 0.3] */
int strmat_compressibility(const strmat_batch* b, double* chi, double* chi_stderr);

/* Multifractal dimension ladder.  dims/counts are parallel arrays of length
 * rungs (>= 3); pass rungs = 0 for the default ladder {128..1024}. */
int strmat_fractal(const char* ensemble, uint64_t seed, const size_t* dims,
                   const size_t* counts, size_t rungs, size_t workers, strmat_table** out);

/* Analytic layer. */
int strmat_theory_law(int p, int k, double s_max, double step, strmat_table** out);
int strmat_theory_plasma(int model, double s_max, double step, strmat_table** out);
int strmat_zero_modes(const char* ensemble, size_t n_max, strmat_table** out);
int strmat_displacement_check(const char* ensemble, size_t dim, size_t trials, uint64_t seed,
                              size_t* max_rank);

const char* strmat_table_name(const strmat_table* t);
size_t strmat_table_rows(const strmat_table* t);
size_t strmat_table_cols(const strmat_table* t);
const char* strmat_table_column(const strmat_table* t, size_t col);
double strmat_table_get(const strmat_table* t, size_t row, size_t col);
void strmat_table_free(strmat_table* t);

#ifdef __cplusplus
}
#endif

#endif /* STRMAT_H */
