#include "jnmf/factorize.hpp"

#include "jnmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jnmf {
namespace {

// ||X - WH||_F^2 in expanded form: ||X||^2 - 2<X, WH> + <W^T W, H H^T>.
double content_term(const SparseMatrix& x, double x_norm_sq, const DenseMatrix& w,
                    const DenseMatrix& h) {
  const DenseMatrix xht = x * h.transpose();
  const double cross = (w.array() * xht.array()).sum();
  const DenseMatrix wtw = w.transpose() * w;
  const DenseMatrix hht = h * h.transpose();
  const double quad = (wtw.array() * hht.array()).sum();
  return std::max(0.0, x_norm_sq - 2.0 * cross + quad);
}

// ||S - H~^T H||_F^2 = ||S||^2 - 2<H~^T, S H^T> + <H~ H~^T, H H^T>.
double similarity_term(const SparseMatrix& s, double s_norm_sq, const DenseMatrix& h_tilde,
                       const DenseMatrix& h) {
  const DenseMatrix sht = s * h.transpose();
  const double cross = (h_tilde.transpose().array() * sht.array()).sum();
  const DenseMatrix tt = h_tilde * h_tilde.transpose();
  const DenseMatrix hh = h * h.transpose();
  const double quad = (tt.array() * hh.array()).sum();
  return std::max(0.0, s_norm_sq - 2.0 * cross + quad);
}

void check_factor_shapes(const SparseMatrix& x, const SparseMatrix& s, const DenseMatrix& w,
                         const DenseMatrix& h, const DenseMatrix* h_tilde) {
  const Index n = x.cols();
  if (s.rows() != n || s.cols() != n)
    fail(ErrorCode::ShapeMismatch, "S must be n x n with n = columns of X");
  if (w.rows() != x.rows() || h.cols() != n || w.cols() != h.rows())
    fail(ErrorCode::ShapeMismatch, "W, H do not conform with X");
  if (h_tilde && (h_tilde->rows() != h.rows() || h_tilde->cols() != n))
    fail(ErrorCode::ShapeMismatch, "H~ must have the shape of H");
}

struct Problem {
  const SparseMatrix* x = nullptr;  // content, may be absent
  const SparseMatrix* s = nullptr;  // similarity, may be absent
  double alpha = 0.0;
  double beta = 0.0;
  Index k = 0;
  Index n = 0;
};

class BcdRun {
 public:
  BcdRun(const Problem& p, const FactorizeOptions& opts, std::uint64_t seed)
      : p_(p), opts_(opts), beta_(p.beta) {
    x_norm_sq_ = p.x ? frobenius_norm_sq(*p.x) : 0.0;
    s_norm_sq_ = p.s ? frobenius_norm_sq(*p.s) : 0.0;
    UniformSource src(seed);
    if (p.x) w_ = src.matrix(p.x->rows(), p.k);
    h_ = src.matrix(p.k, p.n);
    if (p.s) h_tilde_ = src.matrix(p.k, p.n);
    result_.seed_used = seed;
    result_.alpha = p.alpha;
  }

  FactorizationResult run() {
    double prev = objective();
    result_.initial_objective = prev;
    for (Index sweep = 0; sweep < opts_.max_sweeps; ++sweep) {
      if (p_.x) {
        update_w();
        result_.block_history.push_back(objective());
      }
      // alpha = beta = 0 leaves the H~ subproblem identically zero.
      if (p_.s && (p_.alpha > 0.0 || beta_ > 0.0)) {
        update_h_tilde();
        result_.block_history.push_back(objective());
      }
      update_h();
      const double f = objective();
      result_.block_history.push_back(f);
      result_.objective_history.push_back(f);
      ++result_.sweeps_run;
      const double change = std::abs(f - prev) / std::max(prev, 1e-30);
      prev = f;
      if (change < opts_.rel_tol) break;
      beta_ *= opts_.beta_growth;
    }
    result_.beta = beta_;
    result_.W = std::move(w_);
    result_.H = std::move(h_);
    if (p_.s) result_.H_tilde = std::move(h_tilde_);
    return std::move(result_);
  }

 private:
  double objective() const {
    double f = 0.0;
    if (p_.x) f += content_term(*p_.x, x_norm_sq_, w_, h_);
    if (p_.s) {
      if (p_.alpha > 0.0) f += p_.alpha * similarity_term(*p_.s, s_norm_sq_, h_tilde_, h_);
      if (beta_ > 0.0) f += beta_ * (h_tilde_ - h_).squaredNorm();
    }
    return f;
  }

  // min_W ||H^T W^T - X^T||
  void update_w() {
    const DenseMatrix gram = h_ * h_.transpose();
    const DenseMatrix rhs = (*p_.x * h_.transpose()).transpose();
    w_ = nls_bpp_normal(gram, rhs, opts_.nls).transpose();
  }

  // min_H~ ||[sqrt(a) H^T; sqrt(b) I] H~ - [sqrt(a) S; sqrt(b) H]||
  void update_h_tilde() {
    DenseMatrix gram = p_.alpha * (h_ * h_.transpose());
    gram.diagonal().array() += beta_;
    // H S computed as (S^T H^T)^T; S is symmetric.
    DenseMatrix rhs = p_.alpha * (p_.s->transpose() * h_.transpose()).transpose();
    rhs += beta_ * h_;
    h_tilde_ = nls_bpp_normal(gram, rhs, opts_.nls);
  }

  // min_H ||[W; sqrt(a) H~^T; sqrt(b) I] H - [X; sqrt(a) S; sqrt(b) H~]||
  void update_h() {
    DenseMatrix gram = DenseMatrix::Zero(p_.k, p_.k);
    DenseMatrix rhs = DenseMatrix::Zero(p_.k, p_.n);
    if (p_.x) {
      gram = w_.transpose() * w_;
      rhs = (p_.x->transpose() * w_).transpose();
    }
    if (p_.s) {
      gram += p_.alpha * (h_tilde_ * h_tilde_.transpose());
      gram.diagonal().array() += beta_;
      rhs += p_.alpha * (*p_.s * h_tilde_.transpose()).transpose();
      rhs += beta_ * h_tilde_;
    }
    h_ = nls_bpp_normal(gram, rhs, opts_.nls);
  }

  const Problem& p_;
  const FactorizeOptions& opts_;
  double beta_;
  double x_norm_sq_ = 0.0, s_norm_sq_ = 0.0;
  DenseMatrix w_, h_, h_tilde_;
  FactorizationResult result_;
};

void check_options(const FactorizeOptions& opts) {
  if (opts.k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (opts.max_sweeps < 1) fail(ErrorCode::InvalidArgument, "max_sweeps must be >= 1");
  if (opts.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (!(opts.rel_tol >= 0.0)) fail(ErrorCode::InvalidArgument, "rel_tol must be >= 0");
  if (!(opts.beta_growth > 0.0) || !std::isfinite(opts.beta_growth))
    fail(ErrorCode::InvalidArgument, "beta_growth must be positive");
  if (opts.alpha && !(*opts.alpha >= 0.0 && std::isfinite(*opts.alpha)))
    fail(ErrorCode::InvalidArgument, "alpha must be a finite nonnegative number");
  if (opts.beta && !(*opts.beta >= 0.0 && std::isfinite(*opts.beta)))
    fail(ErrorCode::InvalidArgument, "beta must be a finite nonnegative number");
}

void check_content(const SparseMatrix& x, Index k) {
  if (x.rows() < 1 || x.cols() < 1) fail(ErrorCode::ShapeMismatch, "X must be non-empty");
  if (!all_nonnegative(x)) fail(ErrorCode::InvalidArgument, "X must be nonnegative");
  if (k > std::min(x.rows(), x.cols()))
    fail(ErrorCode::InvalidArgument,
         "k = " + std::to_string(k) + " exceeds min(m, n) = " +
             std::to_string(std::min(x.rows(), x.cols())));
}

void check_similarity(const SparseMatrix& s, Index k) {
  if (s.rows() < 1 || s.rows() != s.cols()) fail(ErrorCode::ShapeMismatch, "S must be square");
  if (!is_symmetric(s, 1e-12)) fail(ErrorCode::NotSymmetric, "S is not symmetric");
  if (!all_nonnegative(s)) fail(ErrorCode::InvalidArgument, "S must be nonnegative");
  if (k > s.cols())
    fail(ErrorCode::InvalidArgument, "k = " + std::to_string(k) + " exceeds n = " +
                                         std::to_string(s.cols()));
}

Problem make_problem(Method method, const SparseMatrix* x, const SparseMatrix* s,
                     const FactorizeOptions& opts) {
  check_options(opts);
  Problem p;
  p.k = opts.k;
  switch (method) {
    case Method::Nmf:
      if (!x) fail(ErrorCode::InvalidArgument, "nmf requires X");
      check_content(*x, opts.k);
      p.x = x;
      p.n = x->cols();
      break;
    case Method::SymNmf:
      if (!s) fail(ErrorCode::InvalidArgument, "symnmf requires S");
      check_similarity(*s, opts.k);
      p.s = s;
      p.n = s->cols();
      p.alpha = 1.0;
      p.beta = opts.beta ? *opts.beta : default_beta(1.0, *s);
      break;
    case Method::Joint:
      if (!x || !s) fail(ErrorCode::InvalidArgument, "joint nmf requires X and S");
      check_content(*x, opts.k);
      check_similarity(*s, opts.k);
      if (s->cols() != x->cols())
        fail(ErrorCode::ShapeMismatch, "S must be n x n with n = columns of X");
      p.x = x;
      p.s = s;
      p.n = x->cols();
      p.alpha = opts.alpha ? *opts.alpha : default_alpha(*x, *s);
      p.beta = opts.beta ? *opts.beta : default_beta(p.alpha, *s);
      break;
  }
  return p;
}

}  // namespace

double default_alpha(const SparseMatrix& x, const SparseMatrix& s) {
  const double s_sq = frobenius_norm_sq(s);
  if (s_sq == 0.0) fail(ErrorCode::ZeroSimilarity, "default alpha needs a nonzero S");
  return frobenius_norm_sq(x) / s_sq;
}

double default_beta(double alpha, const SparseMatrix& s) { return alpha * max_abs(s); }

double joint_objective(const SparseMatrix& x, const SparseMatrix& s, const DenseMatrix& w,
                       const DenseMatrix& h, double alpha) {
  check_factor_shapes(x, s, w, h, nullptr);
  return content_term(x, frobenius_norm_sq(x), w, h) +
         alpha * similarity_term(s, frobenius_norm_sq(s), h, h);
}

double penalized_objective(const SparseMatrix& x, const SparseMatrix& s, const DenseMatrix& w,
                           const DenseMatrix& h, const DenseMatrix& h_tilde, double alpha,
                           double beta) {
  check_factor_shapes(x, s, w, h, &h_tilde);
  return content_term(x, frobenius_norm_sq(x), w, h) +
         alpha * similarity_term(s, frobenius_norm_sq(s), h_tilde, h) +
         beta * (h_tilde - h).squaredNorm();
}

std::vector<FactorizationResult> run_trials(Method method, const SparseMatrix* x,
                                            const SparseMatrix* s,
                                            const FactorizeOptions& opts) {
  const Problem p = make_problem(method, x, s, opts);
  std::vector<FactorizationResult> out;
  out.reserve(static_cast<std::size_t>(opts.trials));
  for (Index t = 0; t < opts.trials; ++t)
    out.push_back(BcdRun(p, opts, opts.seed + static_cast<std::uint64_t>(t)).run());
  return out;
}

std::size_t best_trial(const std::vector<FactorizationResult>& trials) {
  if (trials.empty()) fail(ErrorCode::InvalidArgument, "no trials to choose from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < trials.size(); ++i)
    if (trials[i].final_objective() < trials[best].final_objective()) best = i;
  return best;
}

namespace {
FactorizationResult pick_best(std::vector<FactorizationResult> all) {
  const std::size_t b = best_trial(all);
  return std::move(all[b]);
}
}  // namespace

FactorizationResult nmf(const SparseMatrix& x, const FactorizeOptions& opts) {
  return pick_best(run_trials(Method::Nmf, &x, nullptr, opts));
}

FactorizationResult symnmf(const SparseMatrix& s, const FactorizeOptions& opts) {
  return pick_best(run_trials(Method::SymNmf, nullptr, &s, opts));
}

FactorizationResult joint_nmf(const SparseMatrix& x, const SparseMatrix& s,
                              const FactorizeOptions& opts) {
  return pick_best(run_trials(Method::Joint, &x, &s, opts));
}

Labeling hard_assign(const DenseMatrix& h) {
  std::vector<int> labels(static_cast<std::size_t>(h.cols()), 0);
  for (Index j = 0; j < h.cols(); ++j) {
    Index best = 0;
    for (Index i = 1; i < h.rows(); ++i)
      if (h(i, j) > h(best, j)) best = i;
    labels[static_cast<std::size_t>(j)] = static_cast<int>(best);
  }
  return Labeling::hard(labels, static_cast<int>(h.rows()));
}

}  // namespace jnmf
