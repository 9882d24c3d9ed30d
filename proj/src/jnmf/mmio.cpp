#include "jnmf/mmio.hpp"

#include "jnmf/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace jnmf::mm {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Header parse_banner(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Parse, "empty Matrix Market stream");
  std::istringstream ss(line);
  std::string tag, object, format, field, symmetry;
  ss >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix")
    fail(ErrorCode::Parse, "missing %%MatrixMarket matrix banner");
  Header h;
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format == "coordinate") h.coordinate = true;
  else if (format == "array") h.coordinate = false;
  else fail(ErrorCode::Parse, "unsupported Matrix Market format '" + format + "'");
  if (field == "pattern") h.pattern = true;
  else if (field == "integer") h.integer = true;
  else if (field != "real" && field != "double")
    fail(ErrorCode::Parse, "unsupported Matrix Market field '" + field + "'");
  if (h.pattern && !h.coordinate) fail(ErrorCode::Parse, "pattern requires coordinate format");
  if (symmetry == "symmetric") h.symmetric = true;
  else if (symmetry != "general")
    fail(ErrorCode::Parse, "unsupported Matrix Market symmetry '" + symmetry + "'");
  return h;
}

// Skips comment and blank lines, returns the next data line.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

struct Raw {
  Index rows = 0, cols = 0;
  std::vector<Triplet> entries;
};

Raw read_raw(std::istream& in) {
  Header h = parse_banner(in);
  std::string line;
  if (!next_data_line(in, line)) fail(ErrorCode::Parse, "missing size line");
  std::istringstream size_line(line);
  Raw raw;
  long long rows = 0, cols = 0, nnz = 0;
  if (h.coordinate) {
    if (!(size_line >> rows >> cols >> nnz)) fail(ErrorCode::Parse, "malformed size line");
  } else if (!(size_line >> rows >> cols)) {
    fail(ErrorCode::Parse, "malformed size line");
  }
  if (rows < 0 || cols < 0 || nnz < 0) fail(ErrorCode::Parse, "negative dimensions");
  if (h.symmetric && rows != cols) fail(ErrorCode::Parse, "symmetric matrix must be square");
  raw.rows = rows;
  raw.cols = cols;

  if (h.coordinate) {
    raw.entries.reserve(static_cast<std::size_t>(h.symmetric ? 2 * nnz : nnz));
    for (long long e = 0; e < nnz; ++e) {
      if (!next_data_line(in, line))
        fail(ErrorCode::Parse, "expected " + std::to_string(nnz) + " entries, got " +
                                   std::to_string(e));
      std::istringstream ls(line);
      long long i = 0, j = 0;
      double v = 1.0;
      if (!(ls >> i >> j)) fail(ErrorCode::Parse, "malformed entry line: " + line);
      if (!h.pattern && !(ls >> v)) fail(ErrorCode::Parse, "missing value: " + line);
      if (i < 1 || i > rows || j < 1 || j > cols)
        fail(ErrorCode::IndexOutOfRange, "entry index out of range: " + line);
      raw.entries.emplace_back(i - 1, j - 1, v);
      if (h.symmetric && i != j) raw.entries.emplace_back(j - 1, i - 1, v);
    }
  } else {
    // Column-major values; symmetric arrays list the lower triangle only.
    for (long long j = 0; j < cols; ++j) {
      for (long long i = h.symmetric ? j : 0; i < rows; ++i) {
        if (!next_data_line(in, line)) fail(ErrorCode::Parse, "truncated array data");
        std::istringstream ls(line);
        double v = 0.0;
        if (!(ls >> v)) fail(ErrorCode::Parse, "malformed array value: " + line);
        raw.entries.emplace_back(i, j, v);
        if (h.symmetric && i != j) raw.entries.emplace_back(j, i, v);
      }
    }
  }
  return raw;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  return f;
}

void put_real(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

SparseMatrix read_sparse(std::istream& in) {
  Raw raw = read_raw(in);
  return sparse_from_triplets(raw.rows, raw.cols, raw.entries);
}

SparseMatrix read_sparse(const std::string& path) {
  auto f = open_in(path);
  try {
    return read_sparse(f);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

DenseMatrix read_dense(std::istream& in) {
  Raw raw = read_raw(in);
  DenseMatrix m = DenseMatrix::Zero(raw.rows, raw.cols);
  for (const auto& t : raw.entries) m(t.row(), t.col()) = t.value();
  if (!m.allFinite()) fail(ErrorCode::Parse, "non-finite matrix entry");
  return m;
}

DenseMatrix read_dense(const std::string& path) {
  auto f = open_in(path);
  try {
    return read_dense(f);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_sparse(std::ostream& out, const SparseMatrix& m, bool symmetric) {
  if (symmetric && m.rows() != m.cols())
    fail(ErrorCode::ShapeMismatch, "symmetric output requires a square matrix");
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general")
      << "\n";
  Index count = 0;
  for (Index j = 0; j < m.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m, j); it; ++it)
      if (!symmetric || it.row() >= j) ++count;
  out << m.rows() << " " << m.cols() << " " << count << "\n";
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (symmetric && it.row() < j) continue;
      out << it.row() + 1 << " " << j + 1 << " ";
      put_real(out, it.value());
      out << "\n";
    }
  }
  if (!out) fail(ErrorCode::Io, "write failed");
}

void write_sparse(const std::string& path, const SparseMatrix& m, bool symmetric) {
  auto f = open_out(path);
  write_sparse(f, m, symmetric);
}

void write_dense(std::ostream& out, const DenseMatrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << " " << m.cols() << "\n";
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      put_real(out, m(i, j));
      out << "\n";
    }
  }
  if (!out) fail(ErrorCode::Io, "write failed");
}

void write_dense(const std::string& path, const DenseMatrix& m) {
  auto f = open_out(path);
  write_dense(f, m);
}

}  // namespace jnmf::mm
