#ifndef JNMF_MMIO_HPP
#define JNMF_MMIO_HPP

#include "jnmf/matrix.hpp"

#include <iosfwd>
#include <string>

namespace jnmf::mm {

// Matrix Market reader/writer. Indices are 1-based on disk, 0-based in memory.
// Supported banners:
//   %%MatrixMarket matrix coordinate {real|integer|pattern} {general|symmetric}
//   %%MatrixMarket matrix array {real|integer} {general|symmetric}

struct Header {
  bool coordinate = true;
  bool symmetric = false;
  bool pattern = false;
  bool integer = false;
};

// Either storage kind is accepted by both readers; dense input is sparsified
// (zeros dropped) and coordinate input is densified.
SparseMatrix read_sparse(std::istream& in);
SparseMatrix read_sparse(const std::string& path);
DenseMatrix read_dense(std::istream& in);
DenseMatrix read_dense(const std::string& path);

// Symmetric output stores the lower triangle only; the caller asserts symmetry.
void write_sparse(std::ostream& out, const SparseMatrix& m, bool symmetric = false);
void write_sparse(const std::string& path, const SparseMatrix& m, bool symmetric = false);
void write_dense(std::ostream& out, const DenseMatrix& m);
void write_dense(const std::string& path, const DenseMatrix& m);

}  // namespace jnmf::mm

#endif  // JNMF_MMIO_HPP
