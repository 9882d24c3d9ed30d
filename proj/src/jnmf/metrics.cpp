#include "jnmf/metrics.hpp"

#include "jnmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace jnmf {
namespace {

void check_universe(const Labeling& pred, const Labeling& truth) {
  if (pred.size() != truth.size())
    fail(ErrorCode::UniverseMismatch, "prediction covers " + std::to_string(pred.size()) +
                                          " items, truth covers " + std::to_string(truth.size()));
}

double f1(std::int64_t c, std::int64_t a, std::int64_t b) {
  return a + b == 0 ? 0.0 : 2.0 * static_cast<double>(c) / static_cast<double>(a + b);
}

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? std::numeric_limits<double>::quiet_NaN()
                  : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix confusion(const Labeling& pred, const Labeling& truth) {
  check_universe(pred, truth);
  if (!pred.is_hard()) fail(ErrorCode::InvalidArgument, "predicted labeling must be hard");
  ConfusionMatrix c;
  const auto kp = static_cast<std::size_t>(pred.label_count);
  const auto kt = static_cast<std::size_t>(truth.label_count);
  c.counts.assign(kp, std::vector<std::int64_t>(kt, 0));
  c.pred_sizes.assign(kp, 0);
  c.truth_sizes.assign(kt, 0);
  for (std::size_t item = 0; item < pred.size(); ++item) {
    const auto p = static_cast<std::size_t>(pred.sets[item].front());
    ++c.pred_sizes[p];
    for (int g : truth.sets[item]) {
      ++c.counts[p][static_cast<std::size_t>(g)];
      ++c.truth_sizes[static_cast<std::size_t>(g)];
    }
  }
  return c;
}

double average_f1(const ConfusionMatrix& c) {
  const std::size_t kp = c.pred_sizes.size(), kt = c.truth_sizes.size();
  if (kp == 0 || kt == 0) return 0.0;
  double pred_side = 0.0;
  for (std::size_t i = 0; i < kp; ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < kt; ++j)
      best = std::max(best, f1(c.counts[i][j], c.pred_sizes[i], c.truth_sizes[j]));
    pred_side += best;
  }
  double truth_side = 0.0;
  for (std::size_t j = 0; j < kt; ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < kp; ++i)
      best = std::max(best, f1(c.counts[i][j], c.pred_sizes[i], c.truth_sizes[j]));
    truth_side += best;
  }
  return 0.5 * (pred_side / static_cast<double>(kp) + truth_side / static_cast<double>(kt));
}

PairwiseCounts pairwise_counts(const Labeling& pred, const Labeling& truth) {
  check_universe(pred, truth);
  if (!pred.is_hard()) fail(ErrorCode::InvalidArgument, "predicted labeling must be hard");
  const std::int64_t n = static_cast<std::int64_t>(pred.size());
  if (n < 2) fail(ErrorCode::InvalidArgument, "pairwise scores need at least two items");

  // Predicted-connected pairs follow from cluster sizes.
  std::vector<std::int64_t> size(static_cast<std::size_t>(pred.label_count), 0);
  for (const auto& s : pred.sets) ++size[static_cast<std::size_t>(s.front())];
  std::int64_t pred_connected = 0;
  for (std::int64_t s : size) pred_connected += s * (s - 1) / 2;

  // Truth-connected pairs via an inverted index label -> items, each pair
  // (i < j) stamped once regardless of how many labels it shares.
  std::vector<std::vector<std::int64_t>> members(static_cast<std::size_t>(truth.label_count));
  for (std::int64_t i = 0; i < n; ++i)
    for (int l : truth.sets[static_cast<std::size_t>(i)])
      members[static_cast<std::size_t>(l)].push_back(i);
  std::vector<std::int64_t> stamp(static_cast<std::size_t>(n), -1);
  std::int64_t truth_connected = 0, tp = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const int pi = pred.sets[static_cast<std::size_t>(i)].front();
    for (int l : truth.sets[static_cast<std::size_t>(i)]) {
      const auto& list = members[static_cast<std::size_t>(l)];
      for (auto it = std::upper_bound(list.begin(), list.end(), i); it != list.end(); ++it) {
        const std::int64_t j = *it;
        if (stamp[static_cast<std::size_t>(j)] == i) continue;
        stamp[static_cast<std::size_t>(j)] = i;
        ++truth_connected;
        if (pred.sets[static_cast<std::size_t>(j)].front() == pi) ++tp;
      }
    }
  }
  PairwiseCounts pc;
  pc.tp = tp;
  pc.fp = pred_connected - tp;
  pc.fn = truth_connected - tp;
  pc.tn = n * (n - 1) / 2 - pc.tp - pc.fp - pc.fn;
  return pc;
}

PairwiseScores pairwise_scores(const PairwiseCounts& pc) {
  PairwiseScores s;
  s.pwf1 = ratio(2 * pc.tp, 2 * pc.tp + pc.fn + pc.fp);
  s.pwfpr = ratio(pc.fp, pc.fp + pc.tn);
  s.pwfnr = ratio(pc.fn, pc.fn + pc.tp);
  return s;
}

std::vector<RocPoint> roc_curve(const std::vector<double>& scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size())
    fail(ErrorCode::ShapeMismatch, "scores and truth flags differ in length");
  const std::int64_t pos = std::count(positive.begin(), positive.end(), true);
  const std::int64_t neg = static_cast<std::int64_t>(positive.size()) - pos;
  if (pos == 0 || neg == 0)
    fail(ErrorCode::DegenerateLabels, "ROC needs at least one positive and one negative");
  for (double s : scores)
    if (std::isnan(s)) fail(ErrorCode::InvalidArgument, "NaN score");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<RocPoint> curve{{0.0, 0.0}};
  std::int64_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      if (positive[order[i]]) ++tp;
      else ++fp;
    }
    curve.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                     static_cast<double>(tp) / static_cast<double>(pos)});
  }
  return curve;
}

double roc_auc(const std::vector<RocPoint>& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) * 0.5;
  return area;
}

}  // namespace jnmf
