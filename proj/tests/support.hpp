#ifndef JNMF_TESTS_SUPPORT_HPP
#define JNMF_TESTS_SUPPORT_HPP

#include "jnmf/matrix.hpp"
#include "jnmf/mmio.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

// U[0,1) from the standard engine; avoids the implementation-defined
// std::uniform_real_distribution so fixtures are portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
  bool coin(double p) { return uniform() < p; }

  jnmf::DenseMatrix matrix(jnmf::Index r, jnmf::Index c, double lo = 0.0, double hi = 1.0) {
    jnmf::DenseMatrix m(r, c);
    for (jnmf::Index i = 0; i < r; ++i)
      for (jnmf::Index j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

 private:
  std::mt19937_64 eng_;
};

inline jnmf::SparseMatrix to_sparse(const jnmf::DenseMatrix& d) {
  std::vector<jnmf::Triplet> t;
  for (jnmf::Index j = 0; j < d.cols(); ++j)
    for (jnmf::Index i = 0; i < d.rows(); ++i)
      if (d(i, j) != 0.0) t.emplace_back(i, j, d(i, j));
  return jnmf::sparse_from_triplets(d.rows(), d.cols(), t);
}

// Three planted clusters of `per` items each: H* is a block indicator plus
// U[0, 0.01] noise, W* is U[0,1] of size m x 3, X = W* H*, S = H*^T H*.
struct Planted {
  jnmf::DenseMatrix W, H, X, S;
  std::vector<int> labels;
};

inline Planted planted(std::uint64_t seed, jnmf::Index m = 40, jnmf::Index per = 20) {
  Rng rng(seed);
  const jnmf::Index n = 3 * per;
  Planted p;
  p.H = jnmf::DenseMatrix::Zero(3, n);
  for (jnmf::Index j = 0; j < n; ++j) {
    p.labels.push_back(static_cast<int>(j / per));
    for (jnmf::Index i = 0; i < 3; ++i) p.H(i, j) = (i == j / per ? 1.0 : 0.0) + rng.uniform(0.0, 0.01);
  }
  p.W = rng.matrix(m, 3);
  p.X = p.W * p.H;
  p.S = p.H.transpose() * p.H;
  return p;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("jnmf_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Planted data on disk: X.mtx, S.mtx, items.txt, truth.tsv.
inline void write_planted(const std::filesystem::path& dir, const Planted& p) {
  jnmf::mm::write_sparse((dir / "X.mtx").string(), to_sparse(p.X));
  jnmf::mm::write_sparse((dir / "S.mtx").string(), to_sparse(p.S), true);
  std::ostringstream items, truth;
  for (std::size_t j = 0; j < p.labels.size(); ++j) {
    items << "doc" << j << "\n";
    truth << "doc" << j << "\tc" << p.labels[j] << "\n";
  }
  write_file(dir / "items.txt", items.str());
  write_file(dir / "truth.tsv", truth.str());
}

}  // namespace testsupport

#endif  // JNMF_TESTS_SUPPORT_HPP
