#include "jnmf/labeling.hpp"

#include "jnmf/error.hpp"

#include <algorithm>

namespace jnmf {

Labeling Labeling::hard(const std::vector<int>& labels, int label_count) {
  std::vector<std::vector<int>> sets;
  sets.reserve(labels.size());
  for (int l : labels) sets.push_back({l});
  return overlapping(std::move(sets), label_count);
}

Labeling Labeling::overlapping(std::vector<std::vector<int>> sets, int label_count) {
  int max_label = -1;
  for (auto& s : sets) {
    if (s.empty()) fail(ErrorCode::LabelMissing, "every item needs at least one label");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.front() < 0) fail(ErrorCode::InvalidArgument, "labels must be nonnegative");
    max_label = std::max(max_label, s.back());
  }
  if (label_count < 0) label_count = max_label + 1;
  if (max_label >= label_count)
    fail(ErrorCode::InvalidArgument, "label exceeds declared label count");
  Labeling out;
  out.sets = std::move(sets);
  out.label_count = label_count;
  return out;
}

bool Labeling::is_hard() const {
  return std::all_of(sets.begin(), sets.end(), [](const auto& s) { return s.size() == 1; });
}

std::vector<int> Labeling::hard_labels() const {
  if (!is_hard()) fail(ErrorCode::InvalidArgument, "labeling is not a hard partition");
  std::vector<int> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(s.front());
  return out;
}

}  // namespace jnmf
