#include "jnmf/jnmf.h"

#include "jnmf/error.hpp"
#include "jnmf/factorize.hpp"
#include "jnmf/graph.hpp"
#include "jnmf/metrics.hpp"
#include "jnmf/mmio.hpp"
#include "jnmf/nls.hpp"
#include "jnmf/pipeline.hpp"
#include "jnmf/recommend.hpp"

#include <cmath>
#include <new>
#include <sstream>
#include <string>
#include <variant>

struct jnmf_matrix {
  std::variant<jnmf::DenseMatrix, jnmf::SparseMatrix> data;
};

struct jnmf_result {
  jnmf::FactorizationResult value;
};

struct jnmf_config {
  jnmf::RunConfig value;
};

namespace {

thread_local std::string last_error;

jnmf_status set_error(jnmf_status status, const std::string& what) {
  last_error = what;
  return status;
}

// Runs f, translating exceptions into status codes.
template <class F>
jnmf_status guarded(F&& f) noexcept {
  try {
    f();
    return JNMF_OK;
  } catch (const jnmf::Error& e) {
    return set_error(static_cast<jnmf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(JNMF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(JNMF_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(JNMF_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (!p) jnmf::fail(jnmf::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

jnmf::DenseMatrix as_dense(const jnmf_matrix* m) {
  require(m, "matrix");
  if (auto d = std::get_if<jnmf::DenseMatrix>(&m->data)) return *d;
  return jnmf::DenseMatrix(std::get<jnmf::SparseMatrix>(m->data));
}

jnmf::SparseMatrix as_sparse(const jnmf_matrix* m) {
  require(m, "matrix");
  if (auto s = std::get_if<jnmf::SparseMatrix>(&m->data)) return *s;
  jnmf::SparseMatrix s = std::get<jnmf::DenseMatrix>(m->data).sparseView();
  s.makeCompressed();
  return s;
}

jnmf_matrix* wrap(jnmf::DenseMatrix m) { return new jnmf_matrix{std::move(m)}; }
jnmf_matrix* wrap(jnmf::SparseMatrix m) { return new jnmf_matrix{std::move(m)}; }

}  // namespace

extern "C" {

const char* jnmf_version(void) { return "1.0.0"; }

const char* jnmf_last_error(void) { return last_error.c_str(); }

const char* jnmf_status_name(jnmf_status status) {
  if (status == JNMF_OK) return "Ok";
  if (status == JNMF_ERR_INTERNAL) return "Internal";
  return jnmf::error_code_name(static_cast<jnmf::ErrorCode>(status));
}

int jnmf_exit_code(jnmf_status status) {
  if (status == JNMF_OK) return 0;
  if (status == JNMF_ERR_INTERNAL) return 3;
  return jnmf::exit_code(static_cast<jnmf::ErrorCode>(status));
}

jnmf_status jnmf_matrix_dense(int64_t rows, int64_t cols, const double* row_major, jnmf_matrix** out) {
  return guarded([&] {
    require(out, "out");
    if (rows < 0 || cols < 0) jnmf::fail(jnmf::ErrorCode::InvalidArgument, "negative dimensions");
    if (rows * cols > 0) require(row_major, "row_major");
    jnmf::DenseMatrix m(rows, cols);
    for (int64_t i = 0; i < rows; ++i)
      for (int64_t j = 0; j < cols; ++j) m(i, j) = row_major[i * cols + j];
    if (!m.allFinite()) jnmf::fail(jnmf::ErrorCode::InvalidArgument, "non-finite entry");
    *out = wrap(std::move(m));
  });
}

jnmf_status jnmf_matrix_sparse(int64_t rows, int64_t cols, int64_t nnz, const int64_t* row_index,
                               const int64_t* col_index, const double* values, jnmf_matrix** out) {
  return guarded([&] {
    require(out, "out");
    if (rows < 0 || cols < 0 || nnz < 0)
      jnmf::fail(jnmf::ErrorCode::InvalidArgument, "negative dimensions");
    if (nnz > 0) {
      require(row_index, "row_index");
      require(col_index, "col_index");
      require(values, "values");
    }
    std::vector<jnmf::Triplet> t;
    t.reserve(static_cast<std::size_t>(nnz));
    for (int64_t e = 0; e < nnz; ++e) t.emplace_back(row_index[e], col_index[e], values[e]);
    *out = wrap(jnmf::sparse_from_triplets(rows, cols, t));
  });
}

jnmf_status jnmf_matrix_read(const char* path, int as_sparse_flag, jnmf_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    if (as_sparse_flag) *out = wrap(jnmf::mm::read_sparse(std::string(path)));
    else *out = wrap(jnmf::mm::read_dense(std::string(path)));
  });
}

jnmf_status jnmf_matrix_write(const jnmf_matrix* m, const char* path) {
  return guarded([&] {
    require(m, "matrix");
    require(path, "path");
    if (auto d = std::get_if<jnmf::DenseMatrix>(&m->data)) jnmf::mm::write_dense(std::string(path), *d);
    else jnmf::mm::write_sparse(std::string(path), std::get<jnmf::SparseMatrix>(m->data));
  });
}

void jnmf_matrix_free(jnmf_matrix* m) { delete m; }

int64_t jnmf_matrix_rows(const jnmf_matrix* m) {
  if (!m) return 0;
  return std::visit([](const auto& x) { return static_cast<int64_t>(x.rows()); }, m->data);
}

int64_t jnmf_matrix_cols(const jnmf_matrix* m) {
  if (!m) return 0;
  return std::visit([](const auto& x) { return static_cast<int64_t>(x.cols()); }, m->data);
}

int jnmf_matrix_is_sparse(const jnmf_matrix* m) {
  return m && std::holds_alternative<jnmf::SparseMatrix>(m->data) ? 1 : 0;
}

jnmf_status jnmf_matrix_copy_dense(const jnmf_matrix* m, double* row_major_out) {
  return guarded([&] {
    const jnmf::DenseMatrix d = as_dense(m);
    if (d.size() > 0) require(row_major_out, "row_major_out");
    for (jnmf::Index i = 0; i < d.rows(); ++i)
      for (jnmf::Index j = 0; j < d.cols(); ++j) row_major_out[i * d.cols() + j] = d(i, j);
  });
}

jnmf_status jnmf_frobenius_norm_sq(const jnmf_matrix* m, double* out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    *out = std::visit([](const auto& x) { return jnmf::frobenius_norm_sq(x); }, m->data);
  });
}

jnmf_status jnmf_max_abs(const jnmf_matrix* m, double* out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    *out = std::visit([](const auto& x) { return jnmf::max_abs(x); }, m->data);
  });
}

jnmf_status jnmf_nls_bpp(const jnmf_matrix* a, const jnmf_matrix* b, jnmf_matrix** x) {
  return guarded([&] {
    require(x, "x");
    *x = wrap(jnmf::nls_bpp(as_dense(a), as_dense(b)));
  });
}

void jnmf_factorize_options_init(jnmf_factorize_options* opts) {
  if (!opts) return;
  const jnmf::FactorizeOptions d;
  opts->k = 0;
  opts->alpha = -1.0;
  opts->beta = -1.0;
  opts->max_sweeps = d.max_sweeps;
  opts->rel_tol = d.rel_tol;
  opts->seed = d.seed;
  opts->trials = d.trials;
  opts->beta_growth = d.beta_growth;
}

jnmf_status jnmf_factorize(jnmf_method method, const jnmf_matrix* x, const jnmf_matrix* s,
                           const jnmf_factorize_options* opts, jnmf_result** out) {
  return guarded([&] {
    require(opts, "opts");
    require(out, "out");
    jnmf::FactorizeOptions o;
    o.k = opts->k;
    if (opts->alpha >= 0.0) o.alpha = opts->alpha;
    if (opts->beta >= 0.0) o.beta = opts->beta;
    o.max_sweeps = opts->max_sweeps;
    o.rel_tol = opts->rel_tol;
    o.seed = opts->seed;
    o.trials = opts->trials;
    o.beta_growth = opts->beta_growth;
    std::optional<jnmf::SparseMatrix> xs, ss;
    jnmf::Method m;
    switch (method) {
      case JNMF_METHOD_JOINT: m = jnmf::Method::Joint; break;
      case JNMF_METHOD_NMF: m = jnmf::Method::Nmf; break;
      case JNMF_METHOD_SYMNMF: m = jnmf::Method::SymNmf; break;
      default: jnmf::fail(jnmf::ErrorCode::InvalidArgument, "unknown method");
    }
    if (m != jnmf::Method::SymNmf) xs = as_sparse(x);
    if (m != jnmf::Method::Nmf) ss = as_sparse(s);
    auto trials = jnmf::run_trials(m, xs ? &*xs : nullptr, ss ? &*ss : nullptr, o);
    const std::size_t best = jnmf::best_trial(trials);
    *out = new jnmf_result{std::move(trials[best])};
  });
}

void jnmf_result_free(jnmf_result* r) { delete r; }

jnmf_status jnmf_result_factor(const jnmf_result* r, jnmf_factor which, jnmf_matrix** out) {
  return guarded([&] {
    require(r, "result");
    require(out, "out");
    switch (which) {
      case JNMF_FACTOR_W:
        if (r->value.W.size() == 0) jnmf::fail(jnmf::ErrorCode::InvalidArgument, "no W for this method");
        *out = wrap(r->value.W);
        break;
      case JNMF_FACTOR_H:
        *out = wrap(r->value.H);
        break;
      case JNMF_FACTOR_H_TILDE:
        if (!r->value.H_tilde) jnmf::fail(jnmf::ErrorCode::InvalidArgument, "no H~ for this method");
        *out = wrap(*r->value.H_tilde);
        break;
      default:
        jnmf::fail(jnmf::ErrorCode::InvalidArgument, "unknown factor");
    }
  });
}

const double* jnmf_result_objectives(const jnmf_result* r, int64_t* count) {
  if (!r) {
    if (count) *count = 0;
    return nullptr;
  }
  if (count) *count = static_cast<int64_t>(r->value.objective_history.size());
  return r->value.objective_history.data();
}

uint64_t jnmf_result_seed(const jnmf_result* r) { return r ? r->value.seed_used : 0; }
double jnmf_result_alpha(const jnmf_result* r) { return r ? r->value.alpha : 0.0; }
double jnmf_result_beta(const jnmf_result* r) { return r ? r->value.beta : 0.0; }

jnmf_status jnmf_default_alpha(const jnmf_matrix* x, const jnmf_matrix* s, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = jnmf::default_alpha(as_sparse(x), as_sparse(s));
  });
}

jnmf_status jnmf_default_beta(double alpha, const jnmf_matrix* s, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = jnmf::default_beta(alpha, as_sparse(s));
  });
}

jnmf_status jnmf_penalized_objective(const jnmf_matrix* x, const jnmf_matrix* s, const jnmf_matrix* w,
                                     const jnmf_matrix* h, const jnmf_matrix* h_tilde, double alpha,
                                     double beta, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = jnmf::penalized_objective(as_sparse(x), as_sparse(s), as_dense(w), as_dense(h),
                                     as_dense(h_tilde), alpha, beta);
  });
}

jnmf_status jnmf_hard_assign(const jnmf_matrix* h, int32_t* labels_out) {
  return guarded([&] {
    const jnmf::DenseMatrix d = as_dense(h);
    if (d.cols() > 0) require(labels_out, "labels_out");
    const auto labels = jnmf::hard_assign(d).hard_labels();
    for (std::size_t j = 0; j < labels.size(); ++j) labels_out[j] = labels[j];
  });
}

jnmf_status jnmf_normalized_adjacency(const jnmf_matrix* adjacency, jnmf_matrix** out) {
  return guarded([&] {
    require(out, "out");
    jnmf::SparseMatrix a = as_sparse(adjacency);
    if (!jnmf::is_symmetric(a)) jnmf::fail(jnmf::ErrorCode::NotSymmetric, "adjacency is not symmetric");
    *out = wrap(jnmf::normalized_adjacency(jnmf::Graph{std::move(a)}));
  });
}

jnmf_status jnmf_hypergraph_similarity(const jnmf_matrix* incidence, int dual, jnmf_matrix** out) {
  return guarded([&] {
    require(out, "out");
    jnmf::Hypergraph hg{as_sparse(incidence)};
    if (dual) hg = jnmf::dual_hypergraph(hg);
    *out = wrap(jnmf::hypergraph_similarity(hg));
  });
}

jnmf_status jnmf_average_f1(int64_t n, const int32_t* pred, const int32_t* truth, double* out) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) {
      require(pred, "pred");
      require(truth, "truth");
    }
    const std::vector<int> p(pred, pred + n), t(truth, truth + n);
    *out = jnmf::average_f1(jnmf::confusion(jnmf::Labeling::hard(p), jnmf::Labeling::hard(t)));
  });
}

jnmf_status jnmf_pairwise(int64_t n, const int32_t* pred, const int64_t* truth_offsets,
                          const int32_t* truth_labels, int64_t* counts_out, double* scores_out) {
  return guarded([&] {
    if (n < 0) jnmf::fail(jnmf::ErrorCode::InvalidArgument, "negative item count");
    require(pred, "pred");
    require(truth_offsets, "truth_offsets");
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
      if (truth_offsets[i + 1] < truth_offsets[i])
        jnmf::fail(jnmf::ErrorCode::InvalidArgument, "truth offsets must be non-decreasing");
      if (truth_offsets[i + 1] > truth_offsets[i]) require(truth_labels, "truth_labels");
      sets[static_cast<std::size_t>(i)].assign(truth_labels + truth_offsets[i],
                                               truth_labels + truth_offsets[i + 1]);
    }
    const auto pc = jnmf::pairwise_counts(jnmf::Labeling::hard(std::vector<int>(pred, pred + n)),
                                          jnmf::Labeling::overlapping(std::move(sets)));
    if (counts_out) {
      counts_out[0] = pc.tp;
      counts_out[1] = pc.tn;
      counts_out[2] = pc.fp;
      counts_out[3] = pc.fn;
    }
    if (scores_out) {
      const auto s = jnmf::pairwise_scores(pc);
      scores_out[0] = s.pwf1;
      scores_out[1] = s.pwfpr;
      scores_out[2] = s.pwfnr;
    }
  });
}

jnmf_status jnmf_roc_auc(int64_t n, const double* scores, const uint8_t* positive, double* auc) {
  return guarded([&] {
    require(auc, "auc");
    if (n > 0) {
      require(scores, "scores");
      require(positive, "positive");
    }
    std::vector<double> s(scores, scores + n);
    std::vector<bool> p(static_cast<std::size_t>(n));
    for (int64_t i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = positive[i] != 0;
    *auc = jnmf::roc_auc(jnmf::roc_curve(s, p));
  });
}

jnmf_status jnmf_project_document(const jnmf_matrix* w, const double* x, double* h_out) {
  return guarded([&] {
    const jnmf::DenseMatrix wd = as_dense(w);
    require(x, "x");
    require(h_out, "h_out");
    const jnmf::DenseVector xv = Eigen::Map<const jnmf::DenseVector>(x, wd.rows());
    const jnmf::DenseVector h = jnmf::project_document(wd, xv);
    for (jnmf::Index i = 0; i < h.size(); ++i) h_out[i] = h(i);
  });
}

namespace {
jnmf_status score_with(const jnmf_matrix* h_train, const double* h, double* scores_out,
                       jnmf::Scoring scoring) {
  return guarded([&] {
    const jnmf::DenseMatrix ht = as_dense(h_train);
    require(h, "h");
    require(scores_out, "scores_out");
    const jnmf::DenseVector hv = Eigen::Map<const jnmf::DenseVector>(h, ht.rows());
    const jnmf::DenseVector s = jnmf::score(ht, hv, scoring);
    for (jnmf::Index i = 0; i < s.size(); ++i) scores_out[i] = s(i);
  });
}
}  // namespace

jnmf_status jnmf_score_inner(const jnmf_matrix* h_train, const double* h, double* scores_out) {
  return score_with(h_train, h, scores_out, jnmf::Scoring::Inner);
}

jnmf_status jnmf_score_cosine(const jnmf_matrix* h_train, const double* h, double* scores_out) {
  return score_with(h_train, h, scores_out, jnmf::Scoring::Cosine);
}

jnmf_status jnmf_config_create(jnmf_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new jnmf_config{};
  });
}

jnmf_status jnmf_config_load(const char* path, jnmf_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new jnmf_config{jnmf::RunConfig::load(path)};
  });
}

jnmf_status jnmf_config_save(const jnmf_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg, "cfg");
    require(path, "path");
    cfg->value.save(path);
  });
}

void jnmf_config_free(jnmf_config* cfg) { delete cfg; }

jnmf_status jnmf_config_set(jnmf_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "cfg");
    require(key, "key");
    require(value, "value");
    const std::string k(key), v(value);
    if (k.empty() || k.find_first_of("\t\n") != std::string::npos || v.find_first_of("\t\n") != std::string::npos)
      jnmf::fail(jnmf::ErrorCode::InvalidArgument, "keys and values may not contain tabs or newlines");
    cfg->value.set(k, v);
  });
}

jnmf_status jnmf_config_unset(jnmf_config* cfg, const char* key) {
  return guarded([&] {
    require(cfg, "cfg");
    require(key, "key");
    cfg->value.erase(key);
  });
}

const char* jnmf_config_get(const jnmf_config* cfg, const char* key) {
  if (!cfg || !key) return nullptr;
  auto it = cfg->value.values().find(key);
  return it == cfg->value.values().end() ? nullptr : it->second.c_str();
}

jnmf_status jnmf_run(const char* command, jnmf_config* cfg, jnmf_log_fn log, void* user) {
  std::ostringstream text;
  const jnmf_status st = guarded([&] {
    require(command, "command");
    require(cfg, "cfg");
    // Work on a copy so a failed run leaves the caller's config untouched.
    jnmf::RunConfig work = cfg->value;
    jnmf::run_command(command, work, text);
    cfg->value = std::move(work);
  });
  if (log && !text.str().empty()) log(text.str().c_str(), user);
  return st;
}

}  // extern "C"
