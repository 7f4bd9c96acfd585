#pragma once

#include "treebed/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace treebed {

// Sorted, duplicate-free subset of {0..universe-1}.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(int universe, std::vector<Vertex> members);

  static VertexSet all(int universe);
  static VertexSet none(int universe) { return VertexSet(universe, {}); }
  static VertexSet from_mask(const std::vector<char>& mask);

  int universe() const { return universe_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  std::span<const Vertex> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  std::vector<char> mask() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  int universe_ = 0;
  std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);

// Simple undirected graph. Immutable once built; adjacency lists are sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Duplicate edges are merged. Self-loops and out-of-range endpoints throw.
  Graph(int n, std::span<const Edge> edges);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  std::int64_t edge_count() const { return edges_; }
  std::span<const Vertex> neighbours(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(Vertex u, Vertex v) const;
  int min_degree() const;
  int max_degree() const;
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::int64_t edges_ = 0;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;    // local -> original
  std::vector<Vertex> from_parent;  // original -> local, or kUnmapped
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);
Graph remove_edges(const Graph& g, std::span<const Edge> doomed);
Graph add_edges(const Graph& g, std::span<const Edge> extra);
int min_degree_within(const Graph& g, const VertexSet& s);
int count_neighbours_in(const Graph& g, Vertex v, const VertexSet& s);
std::vector<VertexSet> connected_components(const Graph& g);
std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& within);
bool is_connected(const Graph& g);

// L_d(S): every vertex with at least d neighbours in S (S itself included when it qualifies).
VertexSet periphery(const Graph& g, const VertexSet& s, int d);
VertexSet periphery(const Graph& g, const VertexSet& s, const Rational& d);
// Vertices other than x that share a neighbour with x.
VertexSet second_neighbourhood(const Graph& g, Vertex x);

enum class CutMode { exact, heuristic };

struct CutOptions {
  int exact_cap = 20;
  std::uint64_t seed = 0x5eed;
  int restarts = 24;
};

struct CutWitness {
  VertexSet side_a;
  VertexSet side_b;
  std::int64_t crossing = 0;
  Rational density{0};
  // false when produced by local search: the true minimum may be lower
  bool exact = true;
};

CutWitness cut_density(const Graph& g, CutMode mode, const CutOptions& opts = {});

enum class Verdict { yes, no, inconclusive };
const char* to_string(Verdict v);

struct CutDenseResult {
  Verdict verdict = Verdict::yes;
  std::optional<CutWitness> witness;  // present when a violating cut was found
  Rational certified_lower_bound{0};  // from the minimum-degree certificate
};

// A lower bound on the minimum cut density derived from n and the minimum degree alone.
Rational min_degree_density_bound(const Graph& g);
CutDenseResult is_cut_dense(const Graph& g, const Rational& rho, CutMode mode,
                            const CutOptions& opts = {});

// Returns a cover of size <= bound, or nullopt when none exists.
std::optional<VertexSet> vertex_cover_at_most(const Graph& g, int bound,
                                              std::int64_t node_budget = 50'000'000);

struct Matching {
  std::vector<Edge> pairs;  // (x-side vertex, y-side vertex)
  int size() const { return static_cast<int>(pairs.size()); }
};

// Maximum matching between disjoint x_side and y_side using only edges across them.
Matching bipartite_matching_lower(const Graph& g, const VertexSet& x_side,
                                  const VertexSet& y_side);

// Shortest walk of even length from u to v, as a vertex sequence.
std::optional<std::vector<Vertex>> short_even_walk(const Graph& g, Vertex u, Vertex v);

struct PathSearchOptions {
  Rational reservoir_probability{1, 15};
  int random_attempts = 64;
  int exhaustive_cap = 64;
  std::int64_t exhaustive_budget = 2'000'000;
};

struct PathSearchResult {
  std::optional<std::vector<Vertex>> path;
  bool exhaustive = false;  // true when absence is proven by complete search
  bool from_random_split = false;
};

// Simple y-z path whose length (edges) lies in [ell+1, ell+slack].
PathSearchResult path_in_range(const Graph& g, Vertex y, Vertex z, int ell, int slack,
                               std::uint64_t seed, const PathSearchOptions& opts = {});

int diameter(const Graph& g);
// floor(3n/(delta+1)) - 1, the bound that holds for connected graphs with delta >= 2
int diameter_bound(const Graph& g);

struct Bipartition {
  VertexSet first;
  VertexSet second;
};
std::optional<Bipartition> bipartition(const Graph& g);

std::vector<int> bfs_distances(const Graph& g, Vertex source);

}  // namespace treebed
