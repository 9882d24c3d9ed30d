#ifndef JNMF_GRAPH_HPP
#define JNMF_GRAPH_HPP

#include "jnmf/labeling.hpp"
#include "jnmf/matrix.hpp"

#include <utility>
#include <vector>

namespace jnmf {

// Undirected graph: symmetric nonnegative adjacency with zero diagonal.
struct Graph {
  SparseMatrix adjacency;
  Index size() const { return adjacency.rows(); }
};

// Vertex x hyperedge 0/1 incidence matrix.
struct Hypergraph {
  SparseMatrix incidence;
  Index n_vertices() const { return incidence.rows(); }
  Index n_edges() const { return incidence.cols(); }
};

using Edge = std::pair<Index, Index>;

// Directed edge list -> unweighted undirected graph; self-loops dropped,
// duplicates and reciprocal pairs collapsed.
Graph symmetrize(Index n_vertices, const std::vector<Edge>& directed);

// members[j] lists the vertices of hyperedge j; duplicates collapse.
Hypergraph make_hypergraph(Index n_vertices, const std::vector<std::vector<Index>>& members);

// D^{-1/2} A D^{-1/2}
SparseMatrix normalized_adjacency(const Graph& g);

// D_v^{-1/2} M D_e^{-1} M^T D_v^{-1/2}
SparseMatrix hypergraph_similarity(const Hypergraph& hg);

Hypergraph dual_hypergraph(const Hypergraph& hg);

struct Component {
  std::vector<Index> vertices;  // ascending
  std::vector<Index> edges;     // ascending; hypergraphs only
};

// Largest component; among equal sizes the one holding the smallest vertex
// index wins. Hypergraph vertices are connected when they share an edge.
Component largest_connected_component(const Graph& g);
Component largest_connected_component(const Hypergraph& hg);

Graph restrict(const Graph& g, const std::vector<Index>& vertices);
Hypergraph restrict(const Hypergraph& hg, const std::vector<Index>& vertices,
                    const std::vector<Index>& edges);

// count[v] = number of distinct labels among the hyperedges incident to v.
std::vector<Index> membership_counts(const Labeling& edge_labels, const Hypergraph& hg);

}  // namespace jnmf

#endif  // JNMF_GRAPH_HPP
