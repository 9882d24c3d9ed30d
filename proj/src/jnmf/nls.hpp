#ifndef JNMF_NLS_HPP
#define JNMF_NLS_HPP

#include "jnmf/matrix.hpp"

#include <optional>

namespace jnmf {

struct NlsOptions {
  // Per column; unset means 5 x number of variables.
  std::optional<Index> max_pivot_rounds;
  // Full exchanges allowed without reducing the infeasible count before
  // falling back to single-variable exchange.
  int backup_rule_threshold = 3;
};

// min_{X >= 0} ||A X - B||_F by block principal pivoting, column by column.
// A is m x k, B is m x n; returns k x n.
DenseMatrix nls_bpp(const DenseMatrix& a, const DenseMatrix& b, const NlsOptions& opts = {});

// Same problem given the normal equations: gram = A^T A (k x k, symmetric
// positive semidefinite) and rhs = A^T B (k x n). All factorization
// subproblems are assembled in this form so stacked systems never exist in
// memory.
DenseMatrix nls_bpp_normal(const DenseMatrix& gram, const DenseMatrix& rhs,
                           const NlsOptions& opts = {});

}  // namespace jnmf

#endif  // JNMF_NLS_HPP
