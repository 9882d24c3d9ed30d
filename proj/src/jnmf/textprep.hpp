#ifndef JNMF_TEXTPREP_HPP
#define JNMF_TEXTPREP_HPP

#include "jnmf/matrix.hpp"

#include <string>
#include <vector>

namespace jnmf {

// Term-document counts; rows are terms, columns documents.
struct Corpus {
  std::vector<std::string> vocab;
  std::vector<std::string> doc_ids;
  SparseMatrix counts;
};

struct FilterReport {
  std::vector<std::string> removed_terms;
  std::vector<std::string> removed_docs;      // too short
  std::vector<std::string> duplicate_docs;    // dropped by dedupe
  std::vector<Index> kept_terms;              // indices into the input corpus
  std::vector<Index> kept_docs;
};

struct FilterOptions {
  Index min_term_df = 3;
  Index min_doc_len = 5;
  bool dedupe = true;
};

// Term filter (document frequency), then document filter (total count of
// surviving terms), then dedupe (first of identical count columns survives).
Corpus filter_corpus(const Corpus& c, const FilterOptions& opts, FilterReport* report = nullptr);

struct TfidfResult {
  SparseMatrix weights;
  std::vector<Index> vanished_terms;  // present in every document
};

// count * ln(n / df), unsmoothed.
TfidfResult tfidf(const SparseMatrix& counts);

// Unit Euclidean norm per column; throws ZeroColumn on an all-zero column.
SparseMatrix normalize_columns(const SparseMatrix& x);

void check_corpus(const Corpus& c);

}  // namespace jnmf

#endif  // JNMF_TEXTPREP_HPP
