#include "jnmf/graph.hpp"

#include "jnmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace jnmf {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;  // root is the smallest member
  }

 private:
  std::vector<Index> parent_;
};

std::vector<Index> pick_component(DisjointSets& sets, Index n) {
  std::vector<Index> size(static_cast<std::size_t>(n), 0);
  for (Index v = 0; v < n; ++v) ++size[static_cast<std::size_t>(sets.find(v))];
  Index best = 0;
  for (Index r = 1; r < n; ++r)
    if (size[static_cast<std::size_t>(r)] > size[static_cast<std::size_t>(best)]) best = r;
  std::vector<Index> out;
  for (Index v = 0; v < n; ++v)
    if (sets.find(v) == best) out.push_back(v);
  return out;
}

std::vector<double> row_sums(const SparseMatrix& m) {
  std::vector<double> d(static_cast<std::size_t>(m.rows()), 0.0);
  for (Index j = 0; j < m.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m, j); it; ++it)
      d[static_cast<std::size_t>(it.row())] += it.value();
  return d;
}

}  // namespace

Graph symmetrize(Index n_vertices, const std::vector<Edge>& directed) {
  std::set<std::pair<Index, Index>> undirected;
  for (const auto& [src, dst] : directed) {
    if (src < 0 || src >= n_vertices || dst < 0 || dst >= n_vertices)
      fail(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(src) + "," +
                                           std::to_string(dst) + ") references a vertex outside [0," +
                                           std::to_string(n_vertices) + ")");
    if (src == dst) continue;
    undirected.emplace(std::min(src, dst), std::max(src, dst));
  }
  std::vector<Triplet> t;
  t.reserve(2 * undirected.size());
  for (const auto& [a, b] : undirected) {
    t.emplace_back(a, b, 1.0);
    t.emplace_back(b, a, 1.0);
  }
  return Graph{sparse_from_triplets(n_vertices, n_vertices, t)};
}

Hypergraph make_hypergraph(Index n_vertices, const std::vector<std::vector<Index>>& members) {
  std::vector<Triplet> t;
  for (std::size_t j = 0; j < members.size(); ++j) {
    std::vector<Index> vs = members[j];
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (Index v : vs) {
      if (v < 0 || v >= n_vertices)
        fail(ErrorCode::IndexOutOfRange, "hyperedge " + std::to_string(j) + " references vertex " +
                                             std::to_string(v));
      t.emplace_back(v, static_cast<Index>(j), 1.0);
    }
  }
  return Hypergraph{sparse_from_triplets(n_vertices, static_cast<Index>(members.size()), t)};
}

SparseMatrix normalized_adjacency(const Graph& g) {
  const SparseMatrix& a = g.adjacency;
  if (a.nonZeros() == 0) fail(ErrorCode::EmptyGraph, "graph has no edges");
  const std::vector<double> d = row_sums(a);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d[i] > 0.0))
      fail(ErrorCode::ZeroDegree, "vertex " + std::to_string(i) + " has zero degree");
  SparseMatrix s = a;
  for (Index j = 0; j < s.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(s, j); it; ++it)
      it.valueRef() = it.value() / std::sqrt(d[static_cast<std::size_t>(it.row())] *
                                             d[static_cast<std::size_t>(j)]);
  return s;
}

SparseMatrix hypergraph_similarity(const Hypergraph& hg) {
  const SparseMatrix& m = hg.incidence;
  if (m.rows() == 0 || m.cols() == 0) fail(ErrorCode::EmptyGraph, "hypergraph is empty");
  const std::vector<double> dv = row_sums(m);
  for (std::size_t i = 0; i < dv.size(); ++i)
    if (!(dv[i] > 0.0))
      fail(ErrorCode::ZeroDegree, "vertex " + std::to_string(i) + " has zero degree");
  // Scale column j by d_e(j)^{-1/2} and row i by d_v(i)^{-1/2}; S = B B^T.
  SparseMatrix b = m;
  for (Index j = 0; j < b.outerSize(); ++j) {
    const double de = m.col(j).sum();
    if (!(de > 0.0)) fail(ErrorCode::ZeroDegree, "edge " + std::to_string(j) + " is empty");
    for (SparseMatrix::InnerIterator it(b, j); it; ++it)
      it.valueRef() = it.value() / std::sqrt(dv[static_cast<std::size_t>(it.row())] * de);
  }
  SparseMatrix s = (b * b.transpose()).pruned();
  // Symmetrize exactly: the product sums in different orders for (i,j), (j,i).
  SparseMatrix st = s.transpose();
  s = (s + st) * 0.5;
  s.makeCompressed();
  return s;
}

Hypergraph dual_hypergraph(const Hypergraph& hg) {
  SparseMatrix t = hg.incidence.transpose();
  t.makeCompressed();
  return Hypergraph{t};
}

Component largest_connected_component(const Graph& g) {
  const Index n = g.size();
  if (n == 0) fail(ErrorCode::EmptyGraph, "graph has no vertices");
  DisjointSets sets(n);
  for (Index j = 0; j < g.adjacency.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(g.adjacency, j); it; ++it) sets.unite(it.row(), j);
  return Component{pick_component(sets, n), {}};
}

Component largest_connected_component(const Hypergraph& hg) {
  const Index n = hg.n_vertices();
  if (n == 0) fail(ErrorCode::EmptyGraph, "hypergraph has no vertices");
  DisjointSets sets(n);
  for (Index j = 0; j < hg.incidence.outerSize(); ++j) {
    SparseMatrix::InnerIterator it(hg.incidence, j);
    if (!it) continue;
    const Index first = it.row();
    for (++it; it; ++it) sets.unite(first, it.row());
  }
  Component c{pick_component(sets, n), {}};
  const Index root = sets.find(c.vertices.front());
  for (Index j = 0; j < hg.incidence.outerSize(); ++j) {
    SparseMatrix::InnerIterator it(hg.incidence, j);
    if (it && sets.find(it.row()) == root) c.edges.push_back(j);
  }
  return c;
}

Graph restrict(const Graph& g, const std::vector<Index>& vertices) {
  return Graph{select_submatrix(g.adjacency, vertices, vertices)};
}

Hypergraph restrict(const Hypergraph& hg, const std::vector<Index>& vertices,
                    const std::vector<Index>& edges) {
  return Hypergraph{select_submatrix(hg.incidence, vertices, edges)};
}

std::vector<Index> membership_counts(const Labeling& edge_labels, const Hypergraph& hg) {
  if (static_cast<Index>(edge_labels.size()) != hg.n_edges())
    fail(ErrorCode::LabelMissing, "labels cover " + std::to_string(edge_labels.size()) +
                                      " of " + std::to_string(hg.n_edges()) + " edges");
  std::vector<std::set<int>> seen(static_cast<std::size_t>(hg.n_vertices()));
  for (Index j = 0; j < hg.incidence.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(hg.incidence, j); it; ++it)
      for (int l : edge_labels.sets[static_cast<std::size_t>(j)])
        seen[static_cast<std::size_t>(it.row())].insert(l);
  std::vector<Index> out;
  out.reserve(seen.size());
  for (const auto& s : seen) out.push_back(static_cast<Index>(s.size()));
  return out;
}

}  // namespace jnmf
