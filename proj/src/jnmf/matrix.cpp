#include "jnmf/matrix.hpp"

#include "jnmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jnmf {

double frobenius_norm_sq(const DenseMatrix& m) { return m.squaredNorm(); }

double frobenius_norm_sq(const SparseMatrix& m) {
  double s = 0.0;
  const double* v = m.valuePtr();
  for (Index i = 0; i < m.nonZeros(); ++i) s += v[i] * v[i];
  return s;
}

double max_abs(const DenseMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const SparseMatrix& m) {
  double mx = 0.0;
  const double* v = m.valuePtr();
  for (Index i = 0; i < m.nonZeros(); ++i) mx = std::max(mx, std::abs(v[i]));
  return mx;
}

SparseMatrix sparse_from_triplets(Index rows, Index cols,
                                  const std::vector<Triplet>& entries) {
  std::vector<Triplet> sorted;
  sorted.reserve(entries.size());
  for (const auto& t : entries) {
    if (t.row() < 0 || t.row() >= rows || t.col() < 0 || t.col() >= cols)
      fail(ErrorCode::IndexOutOfRange,
           "entry (" + std::to_string(t.row()) + "," + std::to_string(t.col()) +
               ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    if (!std::isfinite(t.value()))
      fail(ErrorCode::InvalidArgument, "non-finite matrix entry");
    if (t.value() != 0.0) sorted.push_back(t);
  }
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.col() != b.col() ? a.col() < b.col() : a.row() < b.row();
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].row() == sorted[i - 1].row() && sorted[i].col() == sorted[i - 1].col())
      fail(ErrorCode::InvalidArgument,
           "duplicate entry (" + std::to_string(sorted[i].row()) + "," +
               std::to_string(sorted[i].col()) + ")");
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(sorted.begin(), sorted.end());
  m.makeCompressed();
  return m;
}

bool is_symmetric(const SparseMatrix& s, double tol) {
  if (s.rows() != s.cols()) return false;
  SparseMatrix t = s.transpose();
  SparseMatrix d = s - t;
  return max_abs(d) <= tol;
}

bool all_finite(const DenseMatrix& m) { return m.allFinite(); }

bool all_nonnegative(const SparseMatrix& m) {
  const double* v = m.valuePtr();
  for (Index i = 0; i < m.nonZeros(); ++i)
    if (!(v[i] >= 0.0)) return false;
  return true;
}

bool all_nonnegative(const DenseMatrix& m) {
  return m.size() == 0 || m.minCoeff() >= 0.0;
}

DenseMatrix hstack(const DenseMatrix& left, const DenseMatrix& right) {
  if (left.rows() != right.rows())
    fail(ErrorCode::ShapeMismatch, "hstack: row counts differ");
  DenseMatrix out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom) {
  if (top.cols() != bottom.cols())
    fail(ErrorCode::ShapeMismatch, "vstack: column counts differ");
  DenseMatrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

SparseMatrix hstack(const SparseMatrix& left, const SparseMatrix& right) {
  if (left.rows() != right.rows())
    fail(ErrorCode::ShapeMismatch, "hstack: row counts differ");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(left.nonZeros() + right.nonZeros()));
  for (Index j = 0; j < left.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(left, j); it; ++it)
      t.emplace_back(it.row(), j, it.value());
  for (Index j = 0; j < right.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(right, j); it; ++it)
      t.emplace_back(it.row(), left.cols() + j, it.value());
  SparseMatrix out(left.rows(), left.cols() + right.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix select_columns(const SparseMatrix& m, const std::vector<Index>& cols) {
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] < 0 || cols[c] >= m.cols())
      fail(ErrorCode::IndexOutOfRange, "select_columns: column out of range");
    for (SparseMatrix::InnerIterator it(m, cols[c]); it; ++it)
      t.emplace_back(it.row(), static_cast<Index>(c), it.value());
  }
  SparseMatrix out(m.rows(), static_cast<Index>(cols.size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix select_submatrix(const SparseMatrix& m, const std::vector<Index>& rows,
                              const std::vector<Index>& cols) {
  std::vector<Index> row_map(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= m.rows())
      fail(ErrorCode::IndexOutOfRange, "select_submatrix: row out of range");
    row_map[static_cast<std::size_t>(rows[r])] = static_cast<Index>(r);
  }
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] < 0 || cols[c] >= m.cols())
      fail(ErrorCode::IndexOutOfRange, "select_submatrix: column out of range");
    for (SparseMatrix::InnerIterator it(m, cols[c]); it; ++it) {
      Index r = row_map[static_cast<std::size_t>(it.row())];
      if (r >= 0) t.emplace_back(r, static_cast<Index>(c), it.value());
    }
  }
  SparseMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// splitmix64
double UniformSource::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

DenseMatrix UniformSource::matrix(Index rows, Index cols) {
  DenseMatrix m(rows, cols);
  // Row-major draw order so the stream maps to the logical layout.
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = next();
  return m;
}

}  // namespace jnmf
