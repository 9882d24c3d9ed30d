#ifndef JNMF_IO_HPP
#define JNMF_IO_HPP

#include "jnmf/graph.hpp"
#include "jnmf/labeling.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jnmf::io {

// One entry per non-empty line, trailing whitespace stripped.
std::vector<std::string> read_lines(const std::string& path);
void write_lines(const std::string& path, const std::vector<std::string>& lines);

// `src<TAB>dst`, 0-based.
std::vector<Edge> read_edge_list(const std::string& path);

// One hyperedge per line, whitespace-separated 0-based vertex ids. Blank
// lines are kept as empty hyperedges so line j stays edge j.
std::vector<std::vector<Index>> read_hyperedges(const std::string& path);

// `item<TAB>label` lines; an item may repeat (overlapping labels). Items and
// labels keep first-appearance order.
struct LabelTable {
  std::vector<std::string> items;
  std::vector<std::vector<std::string>> labels;
};
LabelTable read_label_table(const std::string& path);
void write_label_table(const std::string& path, const LabelTable& table);

// Interns label strings to dense ids in first-appearance order over `order`.
// Every id in `order` must appear in the table (LabelMissing otherwise).
Labeling to_labeling(const LabelTable& table, const std::vector<std::string>& order,
                     std::vector<std::string>* label_names = nullptr);

// Both tables must cover the same item set (UniverseMismatch otherwise);
// items are aligned in the prediction's order.
std::pair<Labeling, Labeling> align_labelings(const LabelTable& pred, const LabelTable& truth);

// `a<TAB>b` string pairs.
std::vector<std::pair<std::string, std::string>> read_pairs(const std::string& path);

struct ScoredPair {
  std::string a, b;
  double score = 0.0;
};
std::vector<ScoredPair> read_scored_pairs(const std::string& path);

// Flat `key<TAB>value` file.
std::map<std::string, std::string> read_key_values(const std::string& path);
void write_key_values(const std::string& path, const std::map<std::string, std::string>& kv);

// %.17g, round-trips exactly.
std::string format_real(double v);

}  // namespace jnmf::io

#endif  // JNMF_IO_HPP
