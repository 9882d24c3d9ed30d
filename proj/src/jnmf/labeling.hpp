#ifndef JNMF_LABELING_HPP
#define JNMF_LABELING_HPP

#include <vector>

namespace jnmf {

// Item -> label set. Hard labelings have singleton sets. Labels are dense
// integers in [0, label_count); a label with no members is an empty cluster.
struct Labeling {
  std::vector<std::vector<int>> sets;
  int label_count = 0;

  static Labeling hard(const std::vector<int>& labels, int label_count = -1);
  static Labeling overlapping(std::vector<std::vector<int>> sets, int label_count = -1);

  std::size_t size() const { return sets.size(); }
  bool is_hard() const;
  // First label of each item; requires is_hard().
  std::vector<int> hard_labels() const;
};

}  // namespace jnmf

#endif  // JNMF_LABELING_HPP
