#ifndef JNMF_METRICS_HPP
#define JNMF_METRICS_HPP

#include "jnmf/labeling.hpp"

#include <cstdint>
#include <vector>

namespace jnmf {

// c(i, j) = |B_i ∩ G_j| for computed clusters B and ground-truth clusters G.
struct ConfusionMatrix {
  std::vector<std::vector<std::int64_t>> counts;  // pred_sizes.size() x truth_sizes.size()
  std::vector<std::int64_t> pred_sizes;
  std::vector<std::int64_t> truth_sizes;
};

struct PairwiseCounts {
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
  std::int64_t total() const { return tp + tn + fp + fn; }
};

struct PairwiseScores {
  double pwf1 = 0.0, pwfpr = 0.0, pwfnr = 0.0;  // NaN when a denominator is 0
};

struct RocPoint {
  double fpr = 0.0, tpr = 0.0;
};

ConfusionMatrix confusion(const Labeling& pred, const Labeling& truth);

// Symmetrized best-match F1 between computed and ground-truth clusters.
// Empty clusters on either side contribute 0 to their average.
double average_f1(const ConfusionMatrix& c);

// Prediction side must be hard; truth pairs are connected when their label
// sets intersect.
PairwiseCounts pairwise_counts(const Labeling& pred, const Labeling& truth);
PairwiseScores pairwise_scores(const PairwiseCounts& pc);

// Thresholds swept over distinct scores from +inf downward; tied scores share
// one point. Starts at (0,0), ends at (1,1).
std::vector<RocPoint> roc_curve(const std::vector<double>& scores, const std::vector<bool>& positive);

// Trapezoidal area under an ROC curve.
double roc_auc(const std::vector<RocPoint>& curve);

}  // namespace jnmf

#endif  // JNMF_METRICS_HPP
