/*
 * jnmf: clusters items from a feature x item matrix and an item x item
 * similarity (graph or hypergraph) at once by joint nonnegative matrix
 * factorization.
 *
 * C interface. Objects are opaque handles owned by the caller and released
 * with the matching *_free function. Every fallible call returns a
 * jnmf_status; on failure jnmf_last_error() describes the problem (the
 * message is thread-local and valid until the next failing call on the same
 * thread). Output handles are only written on success.
 *
 * Dense buffers crossing this interface are row-major. Indices are 0-based.
 */
#ifndef JNMF_JNMF_H
#define JNMF_JNMF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(JNMF_BUILDING)
#    define JNMF_API __declspec(dllexport)
#  else
#    define JNMF_API __declspec(dllimport)
#  endif
#else
#  define JNMF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jnmf_status {
  JNMF_OK = 0,
  JNMF_ERR_INVALID_ARGUMENT = 1,
  JNMF_ERR_IO = 2,
  JNMF_ERR_PARSE = 3,
  JNMF_ERR_SHAPE_MISMATCH = 4,
  JNMF_ERR_INDEX_OUT_OF_RANGE = 5,
  JNMF_ERR_NOT_SYMMETRIC = 6,
  JNMF_ERR_EMPTY_GRAPH = 7,
  JNMF_ERR_ZERO_DEGREE = 8,
  JNMF_ERR_LABEL_MISSING = 9,
  JNMF_ERR_EMPTY_CORPUS = 10,
  JNMF_ERR_ZERO_COLUMN = 11,
  JNMF_ERR_UNIVERSE_MISMATCH = 12,
  JNMF_ERR_DEGENERATE_LABELS = 13,
  JNMF_ERR_ZERO_QUERY = 14,
  JNMF_ERR_VOCAB_MISMATCH = 15,
  JNMF_ERR_ZERO_SIMILARITY = 16,
  JNMF_ERR_NON_CONVERGENCE = 17,
  JNMF_ERR_SINGULAR_SYSTEM = 18,
  JNMF_ERR_INTERNAL = 100
} jnmf_status;

typedef struct jnmf_matrix jnmf_matrix;
typedef struct jnmf_result jnmf_result;
typedef struct jnmf_config jnmf_config;

JNMF_API const char* jnmf_version(void);
JNMF_API const char* jnmf_last_error(void);
JNMF_API const char* jnmf_status_name(jnmf_status status);
/* Process exit status for a command failure: 0 ok, 1 usage, 2 data, 3 numerical. */
JNMF_API int jnmf_exit_code(jnmf_status status);

/* ---- matrices ---------------------------------------------------------- */

JNMF_API jnmf_status jnmf_matrix_dense(int64_t rows, int64_t cols, const double* row_major,
                                       jnmf_matrix** out);
/* Triplets; duplicates are rejected, explicit zeros dropped. */
JNMF_API jnmf_status jnmf_matrix_sparse(int64_t rows, int64_t cols, int64_t nnz,
                                        const int64_t* row_index, const int64_t* col_index,
                                        const double* values, jnmf_matrix** out);
/* Matrix Market file; as_sparse selects the in-memory representation. */
JNMF_API jnmf_status jnmf_matrix_read(const char* path, int as_sparse, jnmf_matrix** out);
/* Sparse matrices are written in coordinate format, dense ones as arrays. */
JNMF_API jnmf_status jnmf_matrix_write(const jnmf_matrix* m, const char* path);
JNMF_API void jnmf_matrix_free(jnmf_matrix* m);

JNMF_API int64_t jnmf_matrix_rows(const jnmf_matrix* m);
JNMF_API int64_t jnmf_matrix_cols(const jnmf_matrix* m);
JNMF_API int jnmf_matrix_is_sparse(const jnmf_matrix* m);
/* Copies rows*cols values into a caller buffer. */
JNMF_API jnmf_status jnmf_matrix_copy_dense(const jnmf_matrix* m, double* row_major_out);

JNMF_API jnmf_status jnmf_frobenius_norm_sq(const jnmf_matrix* m, double* out);
JNMF_API jnmf_status jnmf_max_abs(const jnmf_matrix* m, double* out);

/* ---- nonnegative least squares ---------------------------------------- */

/* argmin_{X >= 0} ||A X - B||_F by block principal pivoting; X is dense k x n. */
JNMF_API jnmf_status jnmf_nls_bpp(const jnmf_matrix* a, const jnmf_matrix* b, jnmf_matrix** x);

/* ---- factorization ----------------------------------------------------- */

typedef enum jnmf_method {
  JNMF_METHOD_JOINT = 0, /* ||X-WH||^2 + a||S-H~'H||^2 + b||H~-H||^2 */
  JNMF_METHOD_NMF = 1,   /* ||X-WH||^2 */
  JNMF_METHOD_SYMNMF = 2 /* ||S-H~'H||^2 + b||H~-H||^2 */
} jnmf_method;

typedef struct jnmf_factorize_options {
  int64_t k;
  double alpha; /* < 0 selects ||X||_F^2 / ||S||_F^2 */
  double beta;  /* < 0 selects alpha * max|S_ij| */
  int64_t max_sweeps;
  double rel_tol;
  uint64_t seed;
  int64_t trials; /* best of seeds seed, seed+1, ... by final objective */
  double beta_growth;
} jnmf_factorize_options;

JNMF_API void jnmf_factorize_options_init(jnmf_factorize_options* opts);

/* x may be NULL for SYMNMF, s may be NULL for NMF. */
JNMF_API jnmf_status jnmf_factorize(jnmf_method method, const jnmf_matrix* x, const jnmf_matrix* s,
                                    const jnmf_factorize_options* opts, jnmf_result** out);
JNMF_API void jnmf_result_free(jnmf_result* r);

typedef enum jnmf_factor { JNMF_FACTOR_W = 0, JNMF_FACTOR_H = 1, JNMF_FACTOR_H_TILDE = 2 } jnmf_factor;
/* New dense matrix; JNMF_ERR_INVALID_ARGUMENT if the factor does not exist. */
JNMF_API jnmf_status jnmf_result_factor(const jnmf_result* r, jnmf_factor which, jnmf_matrix** out);
/* Per-sweep penalized objective; pointer valid for the life of r. */
JNMF_API const double* jnmf_result_objectives(const jnmf_result* r, int64_t* count);
JNMF_API uint64_t jnmf_result_seed(const jnmf_result* r);
JNMF_API double jnmf_result_alpha(const jnmf_result* r);
JNMF_API double jnmf_result_beta(const jnmf_result* r);

JNMF_API jnmf_status jnmf_default_alpha(const jnmf_matrix* x, const jnmf_matrix* s, double* out);
JNMF_API jnmf_status jnmf_default_beta(double alpha, const jnmf_matrix* s, double* out);
JNMF_API jnmf_status jnmf_penalized_objective(const jnmf_matrix* x, const jnmf_matrix* s,
                                              const jnmf_matrix* w, const jnmf_matrix* h,
                                              const jnmf_matrix* h_tilde, double alpha, double beta,
                                              double* out);
/* labels_out has cols(H) entries: argmax row per column, lowest row on ties. */
JNMF_API jnmf_status jnmf_hard_assign(const jnmf_matrix* h, int32_t* labels_out);

/* ---- graphs ------------------------------------------------------------ */

/* D^{-1/2} A D^{-1/2} for a symmetric adjacency with no isolated vertices. */
JNMF_API jnmf_status jnmf_normalized_adjacency(const jnmf_matrix* adjacency, jnmf_matrix** out);
/* Dv^{-1/2} M De^{-1} M' Dv^{-1/2}; dual != 0 uses M' (vertices and edges swapped). */
JNMF_API jnmf_status jnmf_hypergraph_similarity(const jnmf_matrix* incidence, int dual,
                                                jnmf_matrix** out);

/* ---- evaluation -------------------------------------------------------- */

/* Hard labelings of n items. */
JNMF_API jnmf_status jnmf_average_f1(int64_t n, const int32_t* pred, const int32_t* truth, double* out);
/* Truth label sets in CSR form: item i owns truth_labels[truth_offsets[i] .. truth_offsets[i+1]).
 * counts_out = {tp, tn, fp, fn}; scores_out = {pwf1, pwfpr, pwfnr} (NaN if undefined).
 * Either output may be NULL. */
JNMF_API jnmf_status jnmf_pairwise(int64_t n, const int32_t* pred, const int64_t* truth_offsets,
                                   const int32_t* truth_labels, int64_t* counts_out, double* scores_out);
JNMF_API jnmf_status jnmf_roc_auc(int64_t n, const double* scores, const uint8_t* positive, double* auc);

/* ---- recommendation ---------------------------------------------------- */

/* h_out has cols(W) entries: argmin_{h >= 0} ||x - W h||. */
JNMF_API jnmf_status jnmf_project_document(const jnmf_matrix* w, const double* x, double* h_out);
/* scores_out has cols(H) entries. */
JNMF_API jnmf_status jnmf_score_inner(const jnmf_matrix* h_train, const double* h, double* scores_out);
JNMF_API jnmf_status jnmf_score_cosine(const jnmf_matrix* h_train, const double* h, double* scores_out);

/* ---- commands ---------------------------------------------------------- */

JNMF_API jnmf_status jnmf_config_create(jnmf_config** out);
/* Loads a key<TAB>value manifest written by a previous run. */
JNMF_API jnmf_status jnmf_config_load(const char* path, jnmf_config** out);
JNMF_API jnmf_status jnmf_config_save(const jnmf_config* cfg, const char* path);
JNMF_API void jnmf_config_free(jnmf_config* cfg);
JNMF_API jnmf_status jnmf_config_set(jnmf_config* cfg, const char* key, const char* value);
JNMF_API jnmf_status jnmf_config_unset(jnmf_config* cfg, const char* key);
/* NULL when absent; valid until the key is modified or cfg is freed. */
JNMF_API const char* jnmf_config_get(const jnmf_config* cfg, const char* key);

typedef void (*jnmf_log_fn)(const char* text, void* user);

/* Runs preprocess | cluster | eval | recommend | hypergraph-sim | topics.
 * On success cfg holds the resolved manifest. log may be NULL. */
JNMF_API jnmf_status jnmf_run(const char* command, jnmf_config* cfg, jnmf_log_fn log, void* user);

#ifdef __cplusplus
}
#endif

#endif /* JNMF_JNMF_H */
