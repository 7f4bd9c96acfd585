#pragma once

#include "treebed/graph.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace treebed {

class Tree {
 public:
  Tree() : Tree(1, {}) {}
  // Throws PreconditionViolated unless the edges form a spanning tree on n vertices.
  Tree(int n, std::vector<Edge> edges, std::optional<Vertex> root = std::nullopt);

  int vertex_count() const { return n_; }
  int edge_count() const { return n_ - 1; }
  std::span<const Edge> edges() const { return edges_; }  // sorted, u < v
  std::span<const Vertex> neighbours(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  std::optional<Vertex> root() const { return root_; }
  Tree with_root(std::optional<Vertex> r) const;
  Graph as_graph() const { return Graph(n_, edges_); }

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  int n_ = 1;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::optional<Vertex> root_;
};

struct RootedView {
  Vertex root = 0;
  std::vector<Vertex> parent;  // kUnmapped at the root
  std::vector<std::vector<Vertex>> children;  // ascending ids
  std::vector<int> subtree_size;
  std::vector<int> depth;
  std::vector<Vertex> order;  // BFS order from the root

  static RootedView build(const Tree& t, Vertex root);
  // Vertices of T(v): v and all its descendants.
  std::vector<Vertex> subtree(Vertex v) const;
};

// Tree induced on a connected vertex subset, relabelled 0..|s|-1 in ascending order.
struct InducedTree {
  Tree tree;
  std::vector<Vertex> to_parent;
  std::vector<Vertex> from_parent;
};
InducedTree induced_tree(const Tree& t, const VertexSet& s);

struct EvenOdd {
  VertexSet even;  // v itself excluded
  VertexSet odd;
};
EvenOdd even_odd_sets(const Tree& t, Vertex v);

std::pair<VertexSet, VertexSet> bipartition_classes(const Tree& t);
Vertex balanced_separator_vertex(const Tree& t);
// Components of T - v, ordered by their smallest neighbour of v.
std::vector<VertexSet> components_without(const Tree& t, Vertex v);

struct TwoPartition {
  std::vector<int> j1, j2;
};
struct ThreePartition {
  std::vector<int> i1, i2, i3;
};
TwoPartition sum_partition_two(std::span<const std::int64_t> a, std::int64_t ell);
ThreePartition sum_partition_three(std::span<const std::int64_t> a, std::int64_t ell);

struct TwoForestSplit {
  Vertex pivot = 0;
  VertexSet f1, f2;
  std::vector<VertexSet> components;  // of T - pivot
  std::vector<int> f1_components, f2_components;
};

struct ThreeForestSplit {
  Vertex pivot = 0;
  VertexSet f1, f2, f3;
  std::vector<VertexSet> components;
  std::vector<int> f1_components, f2_components, f3_components;
};

TwoForestSplit split_two_forests(const Tree& t);
ThreeForestSplit split_three_forests(const Tree& t);

struct Subtree {
  std::vector<Vertex> vertices;  // sorted
  std::vector<Edge> edges;       // sorted, u < v
  int size() const { return static_cast<int>(vertices.size()); }
  bool contains(Vertex v) const;
};

struct SubtreeSplit {
  Subtree s1;  // contains the requested vertex
  Subtree s2;
  Vertex shared = 0;
};
SubtreeSplit subtree_split(const Tree& t, Vertex v, int m);

struct ChainSplit {
  Subtree s0;
  std::vector<Subtree> others;
  std::vector<Vertex> attach_points;
  int rounds = 0;  // number of shaving steps performed
};
ChainSplit chain_split(const Tree& t, int m);

struct EvenOddSplit {
  Vertex root = 0;
  std::vector<VertexSet> components;  // of T - root
  std::vector<int> class1, class2;    // component indices
  std::vector<int> even_count, odd_count;  // relative to root, per component
  Rational lhs1{0}, lhs2{0};
  Rational bound{0};
};
EvenOddSplit even_odd_split(const Tree& t);
// (2/3 - 1/(3*maxdeg))*n + 1/2
Rational even_odd_bound(const Tree& t);

struct MsfOptions {
  // P3's |S| bound is asserted only once k reaches threshold_factor * D^(4D+1)
  std::int64_t threshold_factor = 8;
};

struct MSFDecomposition {
  Vertex root = 0;
  std::vector<Edge> matching;  // (s_end, f_end)
  VertexSet s_tree;
  VertexSet f_forest;
  std::vector<VertexSet> f_components;
  std::map<Vertex, Vertex> escape;
  int steiner_size = 0;         // minimal subtree of S spanning the matched S-ends
  std::int64_t steiner_cap = 0;  // D^(4D+1), saturating
  bool p3_asserted = false;
};
MSFDecomposition msf_decomposition(const Tree& t, const MsfOptions& opts = {});

// D^(4D+1) saturating at INT64_MAX
std::int64_t msf_steiner_cap(int max_degree);
std::int64_t msf_p3_threshold(int max_degree, std::int64_t factor = 8);

}  // namespace treebed
