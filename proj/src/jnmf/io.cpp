#include "jnmf/io.hpp"

#include "jnmf/error.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace jnmf::io {
namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  return f;
}

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t' || s.back() == '\n'))
    s.pop_back();
  return s;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

// Splits on the first tab.
std::pair<std::string, std::string> split_tab(const std::string& line, const std::string& path,
                                              std::size_t lineno) {
  const auto tab = line.find('\t');
  if (tab == std::string::npos)
    fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": expected a tab-separated pair");
  return {line.substr(0, tab), line.substr(tab + 1)};
}

long long parse_id(const std::string& tok, const std::string& path, std::size_t lineno) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": bad vertex id '" + tok + "'");
  return v;
}

}  // namespace

std::vector<std::string> read_lines(const std::string& path) {
  auto f = open_in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(f, line))
    if (!blank(line)) out.push_back(rstrip(line));
  return out;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  auto f = open_out(path);
  for (const auto& l : lines) f << l << "\n";
  if (!f) fail(ErrorCode::Io, "write failed: " + path);
}

std::vector<Edge> read_edge_list(const std::string& path) {
  auto f = open_in(path);
  std::vector<Edge> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (blank(line) || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a >> b))
      fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": expected 'src<TAB>dst'");
    out.emplace_back(parse_id(a, path, lineno), parse_id(b, path, lineno));
  }
  return out;
}

std::vector<std::vector<Index>> read_hyperedges(const std::string& path) {
  auto f = open_in(path);
  std::vector<std::vector<Index>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<Index> edge;
    std::string tok;
    while (ls >> tok) edge.push_back(parse_id(tok, path, lineno));
    out.push_back(std::move(edge));
  }
  // A trailing newline must not create a phantom empty edge.
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

LabelTable read_label_table(const std::string& path) {
  auto f = open_in(path);
  LabelTable t;
  std::unordered_map<std::string, std::size_t> pos;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto [item, label] = split_tab(rstrip(line), path, lineno);
    auto [it, fresh] = pos.emplace(item, t.items.size());
    if (fresh) {
      t.items.push_back(item);
      t.labels.emplace_back();
    }
    t.labels[it->second].push_back(label);
  }
  return t;
}

void write_label_table(const std::string& path, const LabelTable& table) {
  auto f = open_out(path);
  for (std::size_t i = 0; i < table.items.size(); ++i)
    for (const auto& l : table.labels[i]) f << table.items[i] << "\t" << l << "\n";
  if (!f) fail(ErrorCode::Io, "write failed: " + path);
}

Labeling to_labeling(const LabelTable& table, const std::vector<std::string>& order,
                     std::vector<std::string>* label_names) {
  std::unordered_map<std::string, std::size_t> row;
  for (std::size_t i = 0; i < table.items.size(); ++i) row.emplace(table.items[i], i);
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> names;
  std::vector<std::vector<int>> sets;
  sets.reserve(order.size());
  for (const auto& item : order) {
    auto r = row.find(item);
    if (r == row.end()) fail(ErrorCode::LabelMissing, "no label for item '" + item + "'");
    std::vector<int> s;
    for (const auto& l : table.labels[r->second]) {
      auto [it, fresh] = ids.emplace(l, static_cast<int>(names.size()));
      if (fresh) names.push_back(l);
      s.push_back(it->second);
    }
    sets.push_back(std::move(s));
  }
  if (label_names) *label_names = names;
  return Labeling::overlapping(std::move(sets), static_cast<int>(names.size()));
}

std::pair<Labeling, Labeling> align_labelings(const LabelTable& pred, const LabelTable& truth) {
  const std::set<std::string> a(pred.items.begin(), pred.items.end());
  const std::set<std::string> b(truth.items.begin(), truth.items.end());
  if (a != b)
    fail(ErrorCode::UniverseMismatch, "prediction and truth label files cover different items (" +
                                          std::to_string(a.size()) + " vs " +
                                          std::to_string(b.size()) + ")");
  return {to_labeling(pred, pred.items), to_labeling(truth, pred.items)};
}

std::vector<std::pair<std::string, std::string>> read_pairs(const std::string& path) {
  auto f = open_in(path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (blank(line)) continue;
    out.push_back(split_tab(rstrip(line), path, lineno));
  }
  return out;
}

std::vector<ScoredPair> read_scored_pairs(const std::string& path) {
  auto f = open_in(path);
  std::vector<ScoredPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto [a, rest] = split_tab(rstrip(line), path, lineno);
    auto [b, s] = split_tab(rest, path, lineno);
    ScoredPair p{a, b, 0.0};
    std::size_t used = 0;
    try {
      p.score = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": bad score '" + s + "'");
    out.push_back(std::move(p));
  }
  return out;
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
  auto f = open_in(path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (blank(line) || line[0] == '#') continue;
    if (line.back() == '\r') line.pop_back();
    auto [k, v] = split_tab(line, path, lineno);
    kv[k] = v;
  }
  return kv;
}

void write_key_values(const std::string& path, const std::map<std::string, std::string>& kv) {
  auto f = open_out(path);
  for (const auto& [k, v] : kv) f << k << "\t" << v << "\n";
  if (!f) fail(ErrorCode::Io, "write failed: " + path);
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace jnmf::io
