#include "jnmf/nls.hpp"

#include "jnmf/error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace jnmf {
namespace {

using Pattern = std::vector<bool>;

// Cholesky factors of gram[F,F], memoized per passive set within one call.
class PassiveSolver {
 public:
  explicit PassiveSolver(const DenseMatrix& gram) : gram_(gram) {
    const Index k = gram.rows();
    ridge_ = k > 0 ? 1e-12 * gram.trace() / static_cast<double>(k) : 0.0;
  }

  // Solves gram[F,F] x_F = rhs_F; writes into x at passive positions.
  void solve(const Pattern& passive, const DenseVector& rhs, DenseVector& x) {
    std::vector<Index> idx;
    for (std::size_t i = 0; i < passive.size(); ++i)
      if (passive[i]) idx.push_back(static_cast<Index>(i));
    x.setZero();
    if (idx.empty()) return;
    const Eigen::LLT<DenseMatrix>& llt = factor(passive, idx);
    DenseVector r(static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) r(static_cast<Index>(i)) = rhs(idx[i]);
    DenseVector s = llt.solve(r);
    if (!s.allFinite()) fail(ErrorCode::SingularSystem, "passive-set solve produced non-finite values");
    for (std::size_t i = 0; i < idx.size(); ++i) x(idx[i]) = s(static_cast<Index>(i));
  }

 private:
  const Eigen::LLT<DenseMatrix>& factor(const Pattern& passive, const std::vector<Index>& idx) {
    auto found = cache_.find(passive);
    if (found != cache_.end()) return found->second;
    const Index p = static_cast<Index>(idx.size());
    DenseMatrix sub(p, p);
    for (Index r = 0; r < p; ++r)
      for (Index c = 0; c < p; ++c) sub(r, c) = gram_(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    Eigen::LLT<DenseMatrix> llt(sub);
    if (llt.info() != Eigen::Success) {
      if (ridge_ > 0.0) {
        sub.diagonal().array() += ridge_;
        llt.compute(sub);
      }
      if (ridge_ <= 0.0 || llt.info() != Eigen::Success)
        fail(ErrorCode::SingularSystem,
             "normal equations singular on a passive set of size " + std::to_string(p));
    }
    if (cache_.size() > 4096) cache_.clear();
    return cache_.emplace(passive, std::move(llt)).first->second;
  }

  const DenseMatrix& gram_;
  double ridge_ = 0.0;
  std::map<Pattern, Eigen::LLT<DenseMatrix>> cache_;
};

}  // namespace

DenseMatrix nls_bpp_normal(const DenseMatrix& gram, const DenseMatrix& rhs,
                           const NlsOptions& opts) {
  const Index k = gram.rows();
  if (k < 1 || gram.cols() != k)
    fail(ErrorCode::ShapeMismatch, "nls: gram matrix must be square and non-empty");
  if (rhs.rows() != k) fail(ErrorCode::ShapeMismatch, "nls: rhs rows must equal gram size");
  if (opts.backup_rule_threshold < 1)
    fail(ErrorCode::InvalidArgument, "nls: backup_rule_threshold must be >= 1");
  const Index max_rounds = opts.max_pivot_rounds.value_or(5 * k);
  if (max_rounds < 1) fail(ErrorCode::InvalidArgument, "nls: max_pivot_rounds must be >= 1");
  if (!gram.allFinite() || !rhs.allFinite())
    fail(ErrorCode::InvalidArgument, "nls: non-finite input");

  // Dual feasibility slack scaled to the problem; primal feasibility is strict.
  const double scale = std::max(1.0, gram.diagonal().cwiseAbs().maxCoeff());
  const double grad_tol = 1e-13 * scale;

  PassiveSolver solver(gram);
  DenseMatrix out(k, rhs.cols());
  DenseVector x(k), y(k), b(k);
  Pattern passive(static_cast<std::size_t>(k));
  std::vector<Index> infeasible;
  infeasible.reserve(static_cast<std::size_t>(k));

  for (Index col = 0; col < rhs.cols(); ++col) {
    b = rhs.col(col);
    std::fill(passive.begin(), passive.end(), false);
    x.setZero();
    y = -b;
    Index best_count = k + 1;
    int backup = opts.backup_rule_threshold;
    Index round = 0;
    for (;;) {
      infeasible.clear();
      for (Index i = 0; i < k; ++i) {
        const bool p = passive[static_cast<std::size_t>(i)];
        if ((p && x(i) < 0.0) || (!p && y(i) < -grad_tol)) infeasible.push_back(i);
      }
      if (infeasible.empty()) break;
      if (round++ >= max_rounds)
        fail(ErrorCode::NonConvergence,
             "nls: pivoting did not converge within " + std::to_string(max_rounds) +
                 " rounds (column " + std::to_string(col) + ")");
      const Index count = static_cast<Index>(infeasible.size());
      if (count < best_count) {
        best_count = count;
        backup = opts.backup_rule_threshold;
        for (Index i : infeasible) passive[static_cast<std::size_t>(i)].flip();
      } else if (backup >= 1) {
        --backup;
        for (Index i : infeasible) passive[static_cast<std::size_t>(i)].flip();
      } else {
        passive[static_cast<std::size_t>(infeasible.front())].flip();
      }
      solver.solve(passive, b, x);
      y.noalias() = gram * x - b;
      for (Index i = 0; i < k; ++i)
        if (passive[static_cast<std::size_t>(i)]) y(i) = 0.0;
    }
    out.col(col) = x;
  }
  return out;
}

DenseMatrix nls_bpp(const DenseMatrix& a, const DenseMatrix& b, const NlsOptions& opts) {
  if (a.rows() < 1 || a.cols() < 1) fail(ErrorCode::ShapeMismatch, "nls: A must be non-empty");
  if (a.rows() != b.rows()) fail(ErrorCode::ShapeMismatch, "nls: A and B row counts differ");
  const DenseMatrix gram = a.transpose() * a;
  const DenseMatrix rhs = a.transpose() * b;
  return nls_bpp_normal(gram, rhs, opts);
}

}  // namespace jnmf
