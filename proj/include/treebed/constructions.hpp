#pragma once

#include "treebed/graph.hpp"
#include "treebed/tree.hpp"

#include <cstdint>
#include <vector>

namespace treebed {

// A host with a distinguished vertex and the vertex classes it was built from.
struct ApexHost {
  Graph graph;
  Vertex apex = 0;
  std::vector<VertexSet> parts;
};

// Two disjoint K_{2k/3-1} and a vertex joined to everything. k must be a multiple of 3.
ApexHost gen_two_cliques_apex(int k);
ApexHost gen_two_cliques_apex_sized(int clique_size);

// A centre of degree 3 with three paths of k/3 vertices hanging from it.
Tree gen_three_branch_tree(int k);

// Root with ell children, each carrying k/ell leaves. The tree has ell + k edges.
Tree gen_spider(int k, int ell);

struct BpsHost {
  Graph graph;
  Vertex apex = 0;
  int small_part = 0;
  int big_part = 0;
  std::vector<VertexSet> small_classes;  // one per copy
  std::vector<VertexSet> big_classes;
};

// Two copies of K_{ceil((1+a)k/2), ceil((1-a)k)} and an apex on both larger classes.
BpsHost gen_bps_alpha_host(int k, const Rational& alpha);
BpsHost gen_bps_host_sized(int small_part, int big_part);

// d disjoint cliques on floor(k/2)-1 vertices and an apex with one neighbour in each.
ApexHost gen_clique_chain_apex(int k, int d);

Graph gen_complete_bipartite(int m, int n);
Tree gen_path(int n);
Tree gen_random_tree(int n, int max_deg, std::uint64_t seed);
// Random graph with minimum degree at least delta; extra edges appear with the given probability.
Graph gen_random_graph_min_degree(int n, int delta, std::uint64_t seed,
                                  const Rational& extra_edge_probability = Rational(0));
// Spine path plus pendant legs. max_deg = 0 means unbounded.
Tree gen_caterpillar(int spine, int legs, std::uint64_t seed, int max_deg = 0);

}  // namespace treebed
