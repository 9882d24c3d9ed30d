#include "jnmf/error.hpp"
#include "jnmf/metrics.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace jnmf;
using testsupport::Rng;

namespace {

// pred {0}/{1,2,3}, truth {0,1}/{2,3}
const std::vector<int> kPred = {0, 1, 1, 1};
const std::vector<int> kTruth = {0, 0, 1, 1};

std::vector<int> random_hard(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<int> l(n);
  for (auto& x : l) x = static_cast<int>(rng.below(k));
  return l;
}

std::vector<std::vector<int>> random_sets(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::vector<int>> s(n);
  for (auto& set : s) {
    set.push_back(static_cast<int>(rng.below(k)));
    while (rng.coin(0.4)) set.push_back(static_cast<int>(rng.below(k)));
  }
  return s;
}

// Relabel to 0..c-1 in first-appearance order so the oracle sees no empty clusters.
std::vector<int> compact(const std::vector<int>& l) {
  std::vector<int> map(64, -1), out;
  int next = 0;
  for (int x : l) {
    if (map[static_cast<std::size_t>(x)] < 0) map[static_cast<std::size_t>(x)] = next++;
    out.push_back(map[static_cast<std::size_t>(x)]);
  }
  return out;
}

}  // namespace

TEST_CASE("confusion examples") {
  ConfusionMatrix eq = confusion(Labeling::hard({0, 0, 1, 1}), Labeling::hard({0, 0, 1, 1}));
  CHECK(eq.counts == std::vector<std::vector<std::int64_t>>{{2, 0}, {0, 2}});
  ConfusionMatrix c = confusion(Labeling::hard(kPred), Labeling::hard(kTruth));
  CHECK(c.counts == std::vector<std::vector<std::int64_t>>{{1, 0}, {1, 2}});
  CHECK(c.pred_sizes == std::vector<std::int64_t>{1, 3});
  CHECK(c.truth_sizes == std::vector<std::int64_t>{2, 2});
  ConfusionMatrix single = confusion(Labeling::hard({0, 0, 0, 0, 0}), Labeling::hard({0, 0, 0, 0, 0}));
  CHECK(single.counts == std::vector<std::vector<std::int64_t>>{{5}});
  try {
    confusion(Labeling::hard({0, 1}), Labeling::hard({0, 1, 1}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UniverseMismatch);
  }
}

TEST_CASE("average F1 examples") {
  CHECK(average_f1(confusion(Labeling::hard({0, 0, 1, 1}), Labeling::hard({1, 1, 0, 0}))) == 1.0);
  CHECK(std::abs(average_f1(confusion(Labeling::hard(kPred), Labeling::hard(kTruth))) - 11.0 / 15.0) <= 1e-12);
  CHECK(std::abs(average_f1(confusion(Labeling::hard({0, 0, 0, 0}), Labeling::hard(kTruth))) - 2.0 / 3.0) <=
        1e-12);
  // An empty predicted cluster contributes 0 to the predicted-side average.
  const double with_empty = average_f1(confusion(Labeling::hard({0, 0, 1, 1}, 3), Labeling::hard({0, 0, 1, 1})));
  CHECK(std::abs(with_empty - 0.5 * (1.0 + 2.0 / 3.0)) <= 1e-12);
}

TEST_CASE("average F1 matches the oracle, is symmetric and bounded") {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(15);
    const auto p = compact(random_hard(rng, n, 1 + rng.below(4)));
    const auto g = compact(random_hard(rng, n, 1 + rng.below(4)));
    const double f = average_f1(confusion(Labeling::hard(p), Labeling::hard(g)));
    CHECK(std::abs(f - oracle::average_f1_naive(p, g)) <= 1e-12);
    CHECK(std::abs(f - average_f1(confusion(Labeling::hard(g), Labeling::hard(p)))) <= 1e-15);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK((f == 1.0) == (p == g));  // compacted labelings are equal iff identical partitions
  }
}

TEST_CASE("pairwise examples") {
  PairwiseCounts pc = pairwise_counts(Labeling::hard(kPred), Labeling::hard(kTruth));
  CHECK(pc.tp == 1);
  CHECK(pc.tn == 2);
  CHECK(pc.fp == 2);
  CHECK(pc.fn == 1);
  PairwiseScores s = pairwise_scores(pc);
  CHECK(s.pwf1 == 0.4);
  CHECK(s.pwfpr == 0.5);
  CHECK(s.pwfnr == 0.5);

  PairwiseCounts same = pairwise_counts(Labeling::hard(kTruth), Labeling::hard(kTruth));
  CHECK(same.fp == 0);
  CHECK(same.fn == 0);
  CHECK(pairwise_scores(same).pwf1 == 1.0);

  // Items 0 and 1 share label 1; the prediction separates them.
  PairwiseCounts ov = pairwise_counts(Labeling::hard({0, 1}), Labeling::overlapping({{0, 1}, {1}}));
  CHECK(ov.fn == 1);
  CHECK(ov.total() == 1);

  PairwiseScores undefined = pairwise_scores(PairwiseCounts{0, 3, 2, 0});
  CHECK(std::isnan(undefined.pwfnr));
  CHECK(std::isnan(pairwise_scores(PairwiseCounts{0, 0, 0, 0}).pwfpr));
}

TEST_CASE("pairwise counts match brute force on small cases") {
  Rng rng(42);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(7);  // n <= 8
    const auto p = random_hard(rng, n, 1 + rng.below(4));
    const bool overlap = rng.coin(0.5);
    const auto g = overlap ? random_sets(rng, n, 1 + rng.below(4)) : [&] {
      std::vector<std::vector<int>> s;
      for (int x : random_hard(rng, n, 1 + rng.below(4))) s.push_back({x});
      return s;
    }();
    const PairwiseCounts pc = pairwise_counts(Labeling::hard(p), Labeling::overlapping(g));
    const oracle::Pairs ref = oracle::pairs_naive(p, g);
    CHECK(pc.tp == ref.tp);
    CHECK(pc.tn == ref.tn);
    CHECK(pc.fp == ref.fp);
    CHECK(pc.fn == ref.fn);
    CHECK(pc.total() == static_cast<std::int64_t>(n * (n - 1) / 2));
  }
}

TEST_CASE("roc curve examples") {
  auto pts = [](const std::vector<RocPoint>& c) {
    std::vector<std::pair<double, double>> v;
    for (const auto& p : c) v.emplace_back(p.fpr, p.tpr);
    return v;
  };
  using P = std::vector<std::pair<double, double>>;
  CHECK(pts(roc_curve({0.9, 0.1}, {true, false})) == P{{0, 0}, {0, 1}, {1, 1}});
  CHECK(pts(roc_curve({0.1, 0.9}, {true, false})) == P{{0, 0}, {1, 0}, {1, 1}});
  CHECK(pts(roc_curve({0.5, 0.5}, {true, false})) == P{{0, 0}, {1, 1}});
  CHECK(roc_auc(roc_curve({0.9, 0.1}, {true, false})) == 1.0);
  CHECK(roc_auc(roc_curve({0.1, 0.9}, {true, false})) == 0.0);
  CHECK(roc_auc(roc_curve({0.5, 0.5}, {true, false})) == 0.5);

  try {
    roc_curve({0.1, 0.2}, {true, true});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateLabels);
  }
}

TEST_CASE("roc area agrees with the pair-counting form") {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(40);
    std::vector<double> s(n);
    std::vector<bool> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(6));  // many ties
      y[i] = rng.coin(0.4);
    }
    y[0] = true;
    y[1] = false;
    // AUC = P(score_pos > score_neg) + P(tie) / 2
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (y[i] && !y[j]) {
          den += 1;
          num += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
        }
    const auto curve = roc_curve(s, y);
    CHECK(curve.front().fpr == 0.0);
    CHECK(curve.front().tpr == 0.0);
    CHECK(curve.back().fpr == 1.0);
    CHECK(curve.back().tpr == 1.0);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].fpr >= curve[i - 1].fpr);
      CHECK(curve[i].tpr >= curve[i - 1].tpr);
    }
    const double auc = roc_auc(curve);
    CHECK(std::abs(auc - num / den) <= 1e-12);
    CHECK(auc >= 0.0);
    CHECK(auc <= 1.0);
  }
}
