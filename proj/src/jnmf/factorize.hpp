#ifndef JNMF_FACTORIZE_HPP
#define JNMF_FACTORIZE_HPP

#include "jnmf/labeling.hpp"
#include "jnmf/matrix.hpp"
#include "jnmf/nls.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace jnmf {

struct FactorizeOptions {
  Index k = 0;
  // Unset means the data-driven default: alpha = ||X||_F^2 / ||S||_F^2 and
  // beta = alpha * ||S||_max.
  std::optional<double> alpha;
  std::optional<double> beta;
  Index max_sweeps = 500;
  double rel_tol = 1e-4;
  std::uint64_t seed = 0;
  Index trials = 1;
  // beta is multiplied by this after every sweep. 1.0 keeps it fixed, which
  // is the only setting under which the recorded objective is monotone.
  double beta_growth = 1.0;
  NlsOptions nls;
};

struct FactorizationResult {
  DenseMatrix W;                       // m x k; empty for symnmf
  DenseMatrix H;                       // k x n
  std::optional<DenseMatrix> H_tilde;  // k x n; absent for plain nmf
  std::vector<double> objective_history;  // penalized objective after each sweep
  std::vector<double> block_history;      // after every individual block update
  double initial_objective = 0.0;
  Index sweeps_run = 0;
  std::uint64_t seed_used = 0;
  double alpha = 0.0;  // resolved weights (beta as used in the last sweep)
  double beta = 0.0;

  double final_objective() const {
    return objective_history.empty() ? initial_objective : objective_history.back();
  }
};

enum class Method { Joint, Nmf, SymNmf };

double default_alpha(const SparseMatrix& x, const SparseMatrix& s);
double default_beta(double alpha, const SparseMatrix& s);

// ||X - WH||_F^2 + alpha ||S - H^T H||_F^2
double joint_objective(const SparseMatrix& x, const SparseMatrix& s, const DenseMatrix& w,
                       const DenseMatrix& h, double alpha);

// ||X - WH||_F^2 + alpha ||S - H~^T H||_F^2 + beta ||H~ - H||_F^2
double penalized_objective(const SparseMatrix& x, const SparseMatrix& s, const DenseMatrix& w,
                           const DenseMatrix& h, const DenseMatrix& h_tilde, double alpha,
                           double beta);

FactorizationResult nmf(const SparseMatrix& x, const FactorizeOptions& opts);
FactorizationResult symnmf(const SparseMatrix& s, const FactorizeOptions& opts);
FactorizationResult joint_nmf(const SparseMatrix& x, const SparseMatrix& s,
                              const FactorizeOptions& opts);

// One result per trial, seeds opts.seed, opts.seed + 1, ... . x is ignored for
// SymNmf and s for Nmf.
std::vector<FactorizationResult> run_trials(Method method, const SparseMatrix* x,
                                            const SparseMatrix* s,
                                            const FactorizeOptions& opts);

// Lowest final penalized objective; earliest trial wins ties.
std::size_t best_trial(const std::vector<FactorizationResult>& trials);

// label[j] = argmax_i H(i, j), lowest row on ties.
Labeling hard_assign(const DenseMatrix& h);

}  // namespace jnmf

#endif  // JNMF_FACTORIZE_HPP
