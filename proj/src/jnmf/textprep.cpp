#include "jnmf/textprep.hpp"

#include "jnmf/error.hpp"

#include <cmath>
#include <map>
#include <string>

namespace jnmf {

void check_corpus(const Corpus& c) {
  if (static_cast<Index>(c.vocab.size()) != c.counts.rows())
    fail(ErrorCode::VocabMismatch, "vocabulary has " + std::to_string(c.vocab.size()) +
                                       " terms but counts have " +
                                       std::to_string(c.counts.rows()) + " rows");
  if (static_cast<Index>(c.doc_ids.size()) != c.counts.cols())
    fail(ErrorCode::ShapeMismatch, "document id list has " + std::to_string(c.doc_ids.size()) +
                                       " entries but counts have " +
                                       std::to_string(c.counts.cols()) + " columns");
  if (!all_nonnegative(c.counts)) fail(ErrorCode::InvalidArgument, "counts must be nonnegative");
}

Corpus filter_corpus(const Corpus& c, const FilterOptions& opts, FilterReport* report) {
  check_corpus(c);
  if (opts.min_term_df < 0 || opts.min_doc_len < 0)
    fail(ErrorCode::InvalidArgument, "filter thresholds must be >= 0");
  FilterReport local;
  FilterReport& rep = report ? *report : local;
  rep = FilterReport{};

  const Index m = c.counts.rows(), n = c.counts.cols();
  std::vector<Index> df(static_cast<std::size_t>(m), 0);
  for (Index j = 0; j < n; ++j)
    for (SparseMatrix::InnerIterator it(c.counts, j); it; ++it)
      ++df[static_cast<std::size_t>(it.row())];
  std::vector<bool> term_kept(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    term_kept[static_cast<std::size_t>(i)] = df[static_cast<std::size_t>(i)] >= opts.min_term_df;
    if (term_kept[static_cast<std::size_t>(i)]) rep.kept_terms.push_back(i);
    else rep.removed_terms.push_back(c.vocab[static_cast<std::size_t>(i)]);
  }

  std::vector<Index> long_docs;
  for (Index j = 0; j < n; ++j) {
    double len = 0.0;
    for (SparseMatrix::InnerIterator it(c.counts, j); it; ++it)
      if (term_kept[static_cast<std::size_t>(it.row())]) len += it.value();
    if (len >= static_cast<double>(opts.min_doc_len)) long_docs.push_back(j);
    else rep.removed_docs.push_back(c.doc_ids[static_cast<std::size_t>(j)]);
  }

  SparseMatrix filtered = select_submatrix(c.counts, rep.kept_terms, long_docs);
  std::vector<Index> kept_local;
  if (opts.dedupe) {
    std::map<std::vector<std::pair<Index, double>>, Index> seen;
    for (Index j = 0; j < filtered.cols(); ++j) {
      std::vector<std::pair<Index, double>> key;
      for (SparseMatrix::InnerIterator it(filtered, j); it; ++it)
        key.emplace_back(it.row(), it.value());
      if (seen.emplace(std::move(key), j).second) kept_local.push_back(j);
      else
        rep.duplicate_docs.push_back(
            c.doc_ids[static_cast<std::size_t>(long_docs[static_cast<std::size_t>(j)])]);
    }
  } else {
    for (Index j = 0; j < filtered.cols(); ++j) kept_local.push_back(j);
  }
  for (Index j : kept_local) rep.kept_docs.push_back(long_docs[static_cast<std::size_t>(j)]);

  if (rep.kept_terms.empty() || rep.kept_docs.empty())
    fail(ErrorCode::EmptyCorpus, "no terms or documents survive filtering");

  Corpus out;
  for (Index i : rep.kept_terms) out.vocab.push_back(c.vocab[static_cast<std::size_t>(i)]);
  for (Index j : rep.kept_docs) out.doc_ids.push_back(c.doc_ids[static_cast<std::size_t>(j)]);
  out.counts = select_columns(filtered, kept_local);
  out.counts.makeCompressed();
  return out;
}

TfidfResult tfidf(const SparseMatrix& counts) {
  const Index m = counts.rows(), n = counts.cols();
  if (n < 1) fail(ErrorCode::EmptyCorpus, "tfidf needs at least one document");
  std::vector<Index> df(static_cast<std::size_t>(m), 0);
  for (Index j = 0; j < n; ++j)
    for (SparseMatrix::InnerIterator it(counts, j); it; ++it)
      if (it.value() > 0.0) ++df[static_cast<std::size_t>(it.row())];
  std::vector<double> idf(static_cast<std::size_t>(m), 0.0);
  TfidfResult out;
  for (Index i = 0; i < m; ++i) {
    const Index d = df[static_cast<std::size_t>(i)];
    if (d == n) out.vanished_terms.push_back(i);
    else if (d > 0) idf[static_cast<std::size_t>(i)] = std::log(static_cast<double>(n) / static_cast<double>(d));
  }
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(counts.nonZeros()));
  for (Index j = 0; j < n; ++j)
    for (SparseMatrix::InnerIterator it(counts, j); it; ++it) {
      const double w = it.value() * idf[static_cast<std::size_t>(it.row())];
      if (w != 0.0) t.emplace_back(it.row(), j, w);
    }
  out.weights = sparse_from_triplets(m, n, t);
  return out;
}

SparseMatrix normalize_columns(const SparseMatrix& x) {
  SparseMatrix out = x;
  for (Index j = 0; j < out.outerSize(); ++j) {
    double sq = 0.0;
    for (SparseMatrix::InnerIterator it(out, j); it; ++it) sq += it.value() * it.value();
    if (!(sq > 0.0)) fail(ErrorCode::ZeroColumn, "column " + std::to_string(j) + " is all zero");
    const double norm = std::sqrt(sq);
    for (SparseMatrix::InnerIterator it(out, j); it; ++it) it.valueRef() = it.value() / norm;
  }
  out.makeCompressed();
  return out;
}

}  // namespace jnmf
