#include "jnmf/recommend.hpp"

#include "jnmf/error.hpp"

#include <cmath>
#include <string>

namespace jnmf {
namespace {

void check_query(const DenseVector& x) {
  if (!x.allFinite()) fail(ErrorCode::InvalidArgument, "query vector has non-finite entries");
  if (x.size() > 0 && x.minCoeff() < 0.0)
    fail(ErrorCode::InvalidArgument, "query vector must be nonnegative");
}

void check_train(const SparseMatrix& x_train) {
  if (x_train.rows() == 0 || x_train.cols() == 0 || x_train.nonZeros() == 0)
    fail(ErrorCode::EmptyCorpus, "training matrix is empty");
}

}  // namespace

DenseVector project_document(const DenseMatrix& w, const DenseVector& x, const NlsOptions& nls) {
  if (w.rows() != x.size())
    fail(ErrorCode::ShapeMismatch, "query has " + std::to_string(x.size()) +
                                       " terms, basis has " + std::to_string(w.rows()));
  check_query(x);
  const DenseMatrix gram = w.transpose() * w;
  const DenseMatrix rhs = w.transpose() * x;
  return nls_bpp_normal(gram, rhs, nls).col(0);
}

DenseMatrix project_documents(const DenseMatrix& w, const SparseMatrix& docs, const NlsOptions& nls) {
  if (w.rows() != docs.rows()) fail(ErrorCode::ShapeMismatch, "documents do not match basis rows");
  if (!all_nonnegative(docs)) fail(ErrorCode::InvalidArgument, "documents must be nonnegative");
  const DenseMatrix gram = w.transpose() * w;
  const DenseMatrix rhs = (docs.transpose() * w).transpose();
  return nls_bpp_normal(gram, rhs, nls);
}

DenseVector score_inner(const DenseMatrix& h_train, const DenseVector& h) {
  if (h_train.rows() != h.size()) fail(ErrorCode::ShapeMismatch, "coordinate dimensions differ");
  return h_train.transpose() * h;
}

DenseVector score_cosine(const DenseMatrix& h_train, const DenseVector& h) {
  if (h_train.rows() != h.size()) fail(ErrorCode::ShapeMismatch, "coordinate dimensions differ");
  const double hn = h.norm();
  if (!(hn > 0.0)) fail(ErrorCode::ZeroQuery, "query coordinates are all zero");
  DenseVector out(h_train.cols());
  for (Index j = 0; j < h_train.cols(); ++j) {
    const double cn = h_train.col(j).norm();
    out(j) = cn > 0.0 ? h_train.col(j).dot(h) / (cn * hn) : 0.0;
  }
  return out;
}

DenseVector score(const DenseMatrix& h_train, const DenseVector& h, Scoring scoring) {
  return scoring == Scoring::Inner ? score_inner(h_train, h) : score_cosine(h_train, h);
}

std::vector<Index> recommend(const DenseVector& scores, double threshold) {
  std::vector<Index> out;
  for (Index j = 0; j < scores.size(); ++j)
    if (scores(j) > threshold) out.push_back(j);
  return out;
}

DenseVector baseline_shared_words(const SparseMatrix& x_train, const DenseVector& x) {
  if (x_train.rows() != x.size()) fail(ErrorCode::ShapeMismatch, "query does not match vocabulary");
  DenseVector out = DenseVector::Zero(x_train.cols());
  for (Index j = 0; j < x_train.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(x_train, j); it; ++it)
      if (it.value() > 0.0 && x(it.row()) > 0.0) out(j) += 1.0;
  return out;
}

RecommendationModel train_joint(const SparseMatrix& x_train, const SparseMatrix& s_train,
                                const FactorizeOptions& opts) {
  check_train(x_train);
  FactorizationResult r = joint_nmf(x_train, s_train, opts);
  return RecommendationModel{std::move(r.W), std::move(r.H), {}};
}

RecommendationModel train_nmf1(const SparseMatrix& x_train, const FactorizeOptions& opts) {
  check_train(x_train);
  FactorizationResult r = nmf(x_train, opts);
  return RecommendationModel{std::move(r.W), std::move(r.H), {}};
}

Nmf2Coordinates nmf2_coordinates(const SparseMatrix& x_train, const DenseVector& x,
                                 const FactorizeOptions& opts) {
  check_train(x_train);
  if (x_train.rows() != x.size()) fail(ErrorCode::ShapeMismatch, "query does not match vocabulary");
  check_query(x);
  SparseMatrix aug = hstack(x_train, SparseMatrix(x.sparseView()));
  FactorizationResult r = nmf(aug, opts);
  const Index n = x_train.cols();
  return Nmf2Coordinates{r.H.leftCols(n), r.H.col(n)};
}

DenseVector baseline_nmf1(const SparseMatrix& x_train, const FactorizeOptions& opts,
                          const DenseVector& x, Scoring scoring) {
  RecommendationModel model = train_nmf1(x_train, opts);
  return score(model.H, project_document(model.W, x, opts.nls), scoring);
}

DenseVector baseline_nmf2(const SparseMatrix& x_train, const FactorizeOptions& opts,
                          const DenseVector& x, Scoring scoring) {
  Nmf2Coordinates c = nmf2_coordinates(x_train, x, opts);
  return score(c.H, c.h, scoring);
}

}  // namespace jnmf
