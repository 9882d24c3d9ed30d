#ifndef JNMF_RECOMMEND_HPP
#define JNMF_RECOMMEND_HPP

#include "jnmf/factorize.hpp"
#include "jnmf/matrix.hpp"
#include "jnmf/nls.hpp"

#include <string>
#include <vector>

namespace jnmf {

struct RecommendationModel {
  DenseMatrix W;  // m x k text basis
  DenseMatrix H;  // k x n training coordinates
  std::vector<std::string> train_doc_ids;
};

enum class Scoring { Inner, Cosine };

// min_{h >= 0} ||x - W h||_2
DenseVector project_document(const DenseMatrix& w, const DenseVector& x, const NlsOptions& nls = {});
// Column-wise projection of several documents; shares W^T W across columns.
DenseMatrix project_documents(const DenseMatrix& w, const SparseMatrix& docs,
                              const NlsOptions& nls = {});

DenseVector score_inner(const DenseMatrix& h_train, const DenseVector& h);
// Zero-norm training columns score 0; h = 0 throws ZeroQuery.
DenseVector score_cosine(const DenseMatrix& h_train, const DenseVector& h);
DenseVector score(const DenseMatrix& h_train, const DenseVector& h, Scoring scoring);

// Indices with score strictly above threshold, ascending.
std::vector<Index> recommend(const DenseVector& scores, double threshold);

// Number of terms present in both x and each training document.
DenseVector baseline_shared_words(const SparseMatrix& x_train, const DenseVector& x);

RecommendationModel train_joint(const SparseMatrix& x_train, const SparseMatrix& s_train,
                                const FactorizeOptions& opts);
// NMF-1: basis learned from text alone.
RecommendationModel train_nmf1(const SparseMatrix& x_train, const FactorizeOptions& opts);

struct Nmf2Coordinates {
  DenseMatrix H;  // k x n, coordinates of the training columns
  DenseVector h;  // coordinates of the query column
};
// NMF-2: factorize [X_train, x] and split off the last coordinate column.
Nmf2Coordinates nmf2_coordinates(const SparseMatrix& x_train, const DenseVector& x,
                                 const FactorizeOptions& opts);

DenseVector baseline_nmf1(const SparseMatrix& x_train, const FactorizeOptions& opts,
                          const DenseVector& x, Scoring scoring);
DenseVector baseline_nmf2(const SparseMatrix& x_train, const FactorizeOptions& opts,
                          const DenseVector& x, Scoring scoring);

}  // namespace jnmf

#endif  // JNMF_RECOMMEND_HPP
