#ifndef JNMF_MATRIX_HPP
#define JNMF_MATRIX_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <vector>

namespace jnmf {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;
// Compressed-column storage; every algorithm walks columns of X and S.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t>;
using Triplet = Eigen::Triplet<double, std::int64_t>;

double frobenius_norm_sq(const DenseMatrix& m);
double frobenius_norm_sq(const SparseMatrix& m);

double max_abs(const DenseMatrix& m);
double max_abs(const SparseMatrix& m);

// Sorted, duplicate-free, explicit zeros dropped. Duplicate (row, col)
// pairs are rejected rather than summed.
SparseMatrix sparse_from_triplets(Index rows, Index cols,
                                  const std::vector<Triplet>& entries);

// Max |S_ij - S_ji| <= tol, and square.
bool is_symmetric(const SparseMatrix& s, double tol = 1e-12);

bool all_finite(const DenseMatrix& m);
bool all_nonnegative(const SparseMatrix& m);
bool all_nonnegative(const DenseMatrix& m);

DenseMatrix hstack(const DenseMatrix& left, const DenseMatrix& right);
DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom);
SparseMatrix hstack(const SparseMatrix& left, const SparseMatrix& right);

// Keeps the listed columns (in the given order).
SparseMatrix select_columns(const SparseMatrix& m, const std::vector<Index>& cols);
// Keeps the listed rows and columns (in the given order).
SparseMatrix select_submatrix(const SparseMatrix& m, const std::vector<Index>& rows,
                              const std::vector<Index>& cols);

// Deterministic U[0,1) stream, identical on every platform for a given seed
// (std::uniform_real_distribution is implementation-defined).
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : state_(seed) {}
  double next();
  DenseMatrix matrix(Index rows, Index cols);

 private:
  std::uint64_t state_;
};

}  // namespace jnmf

#endif  // JNMF_MATRIX_HPP
