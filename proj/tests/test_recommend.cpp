#include "jnmf/error.hpp"
#include "jnmf/recommend.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

using namespace jnmf;
using testsupport::Rng;
using testsupport::to_sparse;

namespace {

DenseVector vec(std::initializer_list<double> v) {
  DenseVector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

// Position of `target` when scores are sorted descending; ties count against it.
Index rank_of(const DenseVector& scores, Index target) {
  Index r = 0;
  for (Index j = 0; j < scores.size(); ++j)
    if (j != target && scores(j) >= scores(target)) ++r;
  return r;
}

FactorizeOptions tight(Index k) {
  FactorizeOptions o;
  o.k = k;
  o.rel_tol = 1e-12;
  o.max_sweeps = 3000;
  return o;
}

}  // namespace

TEST_CASE("projection examples") {
  const DenseVector x = vec({0.3, 0.0, 2.5});
  CHECK((project_document(DenseMatrix::Identity(3, 3), x) - x).cwiseAbs().maxCoeff() <= 1e-15);

  Rng rng(51);
  DenseMatrix w = rng.matrix(6, 3);
  DenseVector h = project_document(w, w.col(1));
  CHECK((w * h - w.col(1)).norm() <= 1e-12);
  CHECK(h.minCoeff() >= 0.0);

  DenseMatrix one(2, 1);
  one << 1, 1;
  CHECK(project_document(one, vec({1, 2}))(0) == doctest::Approx(1.5).epsilon(1e-15));

  DenseMatrix docs = rng.matrix(6, 4);
  DenseMatrix all = project_documents(w, to_sparse(docs));
  for (Index j = 0; j < 4; ++j)
    CHECK((all.col(j) - project_document(w, docs.col(j))).cwiseAbs().maxCoeff() <= 1e-14);

  CHECK(code_of([&] { project_document(w, vec({1, 2})); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { project_document(one, vec({1, -2})); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("inner-product scoring") {
  CHECK(score_inner(DenseMatrix::Ones(2, 3), DenseVector::Zero(2)) == DenseVector::Zero(3));
  CHECK(score_inner(DenseMatrix::Identity(2, 2), vec({3, 4})) == vec({3, 4}));
  DenseMatrix h(2, 2);
  h << 0.6, 1, 0.8, 0;
  CHECK(score_inner(h, vec({0.6, 0.8}))(0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cosine scoring") {
  DenseMatrix h(2, 3);
  h << 2, 0, 1,  //
      4, 3, 1;
  const DenseVector s = score_cosine(h, vec({1, 2}));
  CHECK(s(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(score_cosine(h, vec({1, 0}))(1)) == 0.0);
  CHECK(std::abs(score_cosine(h, vec({1, 0}))(2) - 1.0 / std::sqrt(2.0)) <= 1e-15);

  DenseMatrix zero_col = h;
  zero_col.col(1).setZero();
  CHECK(score_cosine(zero_col, vec({1, 1}))(1) == 0.0);
  CHECK(code_of([&] { score_cosine(h, DenseVector::Zero(2)); }) == ErrorCode::ZeroQuery);

  Rng rng(52);
  for (int t = 0; t < 30; ++t) {
    DenseMatrix ht = rng.matrix(4, 6);
    DenseVector q = rng.matrix(4, 1).col(0);
    const DenseVector base = score_cosine(ht, q);
    CHECK((score_cosine(ht, q * (0.01 + 50 * rng.uniform())) - base).cwiseAbs().maxCoeff() <= 1e-12);
    DenseMatrix scaled = ht;
    scaled.col(static_cast<Index>(rng.below(6))) *= 0.01 + 50 * rng.uniform();
    CHECK((score_cosine(scaled, q) - base).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("thresholded recommendations") {
  const DenseVector s = vec({0.2, 0.8, 0.5});
  CHECK(recommend(s, std::numeric_limits<double>::infinity()).empty());
  CHECK(recommend(s, -std::numeric_limits<double>::infinity()) == std::vector<Index>{0, 1, 2});
  CHECK(recommend(vec({0.2, 0.8}), 0.5) == std::vector<Index>{1});
  CHECK(recommend(s, 0.5) == std::vector<Index>{1});  // strict

  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    DenseVector r = rng.matrix(10, 1).col(0);
    const double t1 = rng.uniform(), t2 = t1 + rng.uniform() * (1 - t1);
    const auto lo = recommend(r, t1), hi = recommend(r, t2);
    CHECK(std::includes(lo.begin(), lo.end(), hi.begin(), hi.end()));
  }
}

TEST_CASE("shared-words baseline") {
  DenseMatrix xt = DenseMatrix::Zero(6, 3);
  xt(0, 0) = 1;
  xt.col(1).head(5).setConstant(0.3);
  xt(2, 2) = 1;
  xt(3, 2) = 2;
  DenseVector disjoint = DenseVector::Zero(6);
  disjoint(5) = 1;
  CHECK(baseline_shared_words(to_sparse(xt), disjoint) == DenseVector::Zero(3));
  CHECK(baseline_shared_words(to_sparse(xt), xt.col(1))(1) == 5.0);
  DenseVector q = DenseVector::Zero(6);
  q(1) = 1;
  q(2) = 1;
  CHECK(baseline_shared_words(to_sparse(xt), q)(2) == 1.0);
}

TEST_CASE("nmf-1 baseline") {
  testsupport::Planted p = testsupport::planted(54);
  const SparseMatrix x = to_sparse(p.X);
  FactorizeOptions o = tight(3);
  const RecommendationModel m = train_nmf1(x, o);
  Index hits = 0;
  for (Index j = 0; j < x.cols(); ++j) {
    const DenseVector s = score_cosine(m.H, project_document(m.W, p.X.col(j)));
    hits += rank_of(s, j) == 0;
  }
  CHECK(hits == x.cols());
  CHECK(rank_of(baseline_nmf1(x, o, p.X.col(7), Scoring::Cosine), 7) == 0);

  const DenseVector flat = baseline_nmf1(x, tight(1), p.X.col(0), Scoring::Cosine);
  CHECK((flat.array() - 1.0).abs().maxCoeff() <= 1e-12);

  CHECK(code_of([&] { baseline_nmf1(x, o, DenseVector::Zero(x.rows()), Scoring::Cosine); }) ==
        ErrorCode::ZeroQuery);
}

TEST_CASE("nmf-2 baseline") {
  testsupport::Planted p = testsupport::planted(55);
  const SparseMatrix x = to_sparse(p.X);
  for (Index j : {0, 25, 59}) {
    const Nmf2Coordinates c = nmf2_coordinates(x, p.X.col(j), tight(3));
    REQUIRE(c.H.cols() == x.cols());
    CHECK(c.h.dot(c.H.col(j)) / (c.h.norm() * c.H.col(j).norm()) >= 0.99);
  }

  Rng rng(56);
  const DenseMatrix single = rng.matrix(5, 1);
  const Nmf2Coordinates c1 = nmf2_coordinates(to_sparse(single), single.col(0), tight(1));
  CHECK(c1.h.dot(c1.H.col(0)) / (c1.h.norm() * c1.H.col(0).norm()) >= 0.99);

  CHECK(code_of([&] { nmf2_coordinates(SparseMatrix(5, 0), single.col(0), tight(1)); }) ==
        ErrorCode::EmptyCorpus);
  CHECK(code_of([&] { baseline_nmf2(SparseMatrix(5, 3), tight(1), single.col(0), Scoring::Inner); }) ==
        ErrorCode::EmptyCorpus);
}

TEST_CASE("joint model retrieves noisy copies of its training documents") {
  testsupport::Planted p = testsupport::planted(57);
  FactorizeOptions o = tight(3);
  o.trials = 3;
  const RecommendationModel m = train_joint(to_sparse(p.X), to_sparse(p.S), o);

  // Noiseless columns come back as their own top match.
  Index self = 0;
  for (Index j = 0; j < p.X.cols(); ++j)
    self += rank_of(score_cosine(m.H, project_document(m.W, p.X.col(j))), j) == 0;
  CHECK(self == p.X.cols());

  // Each entry of the copy is scaled by an independent factor in
  // [1 - 1e-3, 1 + 1e-3], a tenth of the planted within-cluster spread.
  Rng rng(58);
  Index top3 = 0;
  for (Index j = 0; j < p.X.cols(); ++j) {
    DenseVector noisy = p.X.col(j);
    for (Index i = 0; i < noisy.size(); ++i) noisy(i) *= 1.0 + rng.uniform(-1e-3, 1e-3);
    top3 += rank_of(score_cosine(m.H, project_document(m.W, noisy)), j) < 3;
  }
  MESSAGE("noisy copies ranked in the top 3: " << top3 << " / " << p.X.cols());
  CHECK(static_cast<double>(top3) >= 0.9 * static_cast<double>(p.X.cols()));
}
