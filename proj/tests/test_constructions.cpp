#include "support/oracles.hpp"
#include "treebed/constructions.hpp"
#include "treebed/embed.hpp"
#include "treebed/io.hpp"

#include <doctest.h>

using namespace treebed;

namespace {

int recount_min_degree(const Graph& g) {
  auto adj = ref::adjacency(g);
  int d = g.vertex_count();
  for (auto& a : adj) d = std::min<int>(d, static_cast<int>(a.size()));
  return d;
}

int recount_max_degree(const Graph& g) {
  auto adj = ref::adjacency(g);
  int d = 0;
  for (auto& a : adj) d = std::max<int>(d, static_cast<int>(a.size()));
  return d;
}

}  // namespace

TEST_CASE("two cliques and an apex") {
  auto k6 = gen_two_cliques_apex(6);
  CHECK(k6.graph.vertex_count() == 7);
  CHECK(recount_min_degree(k6.graph) == 3);
  CHECK(recount_max_degree(k6.graph) == 6);
  CHECK(k6.graph.degree(k6.apex) == 6);

  // two K5's and the apex: 11 vertices
  auto k9 = gen_two_cliques_apex(9);
  CHECK(k9.graph.vertex_count() == 11);
  CHECK(recount_min_degree(k9.graph) == 5);
  CHECK(recount_max_degree(k9.graph) == 10);

  auto k3 = gen_two_cliques_apex(3);
  CHECK(k3.graph.vertex_count() == 3);
  CHECK(k3.graph.edge_count() == 2);
  CHECK(recount_min_degree(k3.graph) == 1);
  CHECK(recount_max_degree(k3.graph) == 2);

  CHECK_THROWS_AS(gen_two_cliques_apex(7), PreconditionViolated);
  CHECK_THROWS_AS(gen_two_cliques_apex(0), PreconditionViolated);
}

TEST_CASE("three-branch tree") {
  Tree t6 = gen_three_branch_tree(6);
  CHECK(t6.vertex_count() == 7);
  CHECK(t6.degree(0) == 3);
  for (auto& c : components_without(t6, 0)) CHECK(c.size() == 2);
  Tree t9 = gen_three_branch_tree(9);
  CHECK(t9.vertex_count() == 10);
  for (auto& c : components_without(t9, 0)) CHECK(c.size() == 3);
  CHECK(t9.max_degree() == 3);
  Tree t3 = gen_three_branch_tree(3);
  CHECK(t3.vertex_count() == 4);
  CHECK(t3.max_degree() == 3);
  CHECK_THROWS_AS(gen_three_branch_tree(4), PreconditionViolated);
}

TEST_CASE("spider") {
  Tree s = gen_spider(10, 5);
  CHECK(s.vertex_count() == 16);
  CHECK(s.edge_count() == 15);
  CHECK(s.degree(0) == 5);
  int leaves = 0;
  for (Vertex v = 0; v < 16; ++v) leaves += s.degree(v) == 1;
  CHECK(leaves == 10);
  CHECK(gen_spider(6, 3).vertex_count() == 10);
  Tree broom = gen_spider(4, 1);
  CHECK(broom.degree(0) == 1);
  CHECK(broom.max_degree() == 5);
  CHECK_THROWS_AS(gen_spider(7, 3), PreconditionViolated);
}

TEST_CASE("alpha hosts") {
  auto h = gen_bps_alpha_host(10, Rational(1, 5));
  CHECK(h.small_part == 6);
  CHECK(h.big_part == 8);
  CHECK(h.graph.degree(h.apex) == 16);
  CHECK(h.graph.vertex_count() == 2 * (6 + 8) + 1);
  for (auto& c : h.small_classes)
    for (Vertex v : c) CHECK(h.graph.degree(v) == 8);
  for (auto& c : h.big_classes)
    for (Vertex v : c) CHECK(h.graph.degree(v) == 7);
  auto h15 = gen_bps_alpha_host(15, Rational(1, 5));
  CHECK(h15.small_part == 9);
  CHECK(h15.big_part == 12);
  CHECK(h15.graph.degree(h15.apex) == 24);
  CHECK_THROWS_AS(gen_bps_alpha_host(10, Rational(1, 3)), PreconditionViolated);
  CHECK_THROWS_AS(gen_bps_alpha_host(10, Rational(0)), PreconditionViolated);
}

TEST_CASE("clique chain with apex") {
  auto a = gen_clique_chain_apex(6, 3);
  CHECK(a.graph.vertex_count() == 7);
  CHECK(a.graph.degree(a.apex) == 3);
  CHECK(a.graph.edge_count() == 3 + 3);
  auto b = gen_clique_chain_apex(8, 2);
  CHECK(b.graph.vertex_count() == 7);
  CHECK(b.graph.edge_count() == 6 + 2);
  auto c = gen_clique_chain_apex(8, 1);
  CHECK(c.graph.degree(c.apex) == 1);
  CHECK(c.graph.vertex_count() == 4);
  CHECK(brute_force_embed(a.graph, gen_path(7)).status == EmbedStatus::not_found);
  CHECK(brute_force_embed(b.graph, gen_path(9)).status == EmbedStatus::not_found);
  CHECK_THROWS_AS(gen_clique_chain_apex(3, 2), PreconditionViolated);
}

TEST_CASE("complete bipartite and paths") {
  Graph g = gen_complete_bipartite(2, 5);
  CHECK(g.vertex_count() == 7);
  CHECK(g.edge_count() == 10);
  Graph k33 = gen_complete_bipartite(3, 3);
  CHECK(k33.edge_count() == 9);
  CHECK(recount_min_degree(k33) == 3);
  Graph s = gen_complete_bipartite(1, 4);
  CHECK(recount_max_degree(s) == 4);
  CHECK(recount_min_degree(s) == 1);
  Tree p = gen_path(5);
  CHECK(p.edge_count() == 4);
  CHECK(p.max_degree() == 2);
  CHECK(ref::tree_code(p) == ref::tree_code(Tree(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})));
}

TEST_CASE("seeded families are deterministic and respect their degree bounds") {
  CHECK(write_tree_json(gen_random_tree(50, 3, 1)) == write_tree_json(gen_random_tree(50, 3, 1)));
  CHECK(gen_random_tree(50, 3, 1).max_degree() <= 3);
  Graph g = gen_random_graph_min_degree(20, 8, 7);
  CHECK(recount_min_degree(g) >= 8);
  CHECK(write_edge_list(g) == write_edge_list(gen_random_graph_min_degree(20, 8, 7)));
  CHECK_THROWS_AS(gen_random_graph_min_degree(5, 5, 1), Infeasible);
  Tree c = gen_caterpillar(6, 5, 2, 3);
  CHECK(c.vertex_count() == 11);
  CHECK(c.max_degree() <= 3);
  CHECK(write_tree_json(c) == write_tree_json(gen_caterpillar(6, 5, 2, 3)));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Tree t = gen_random_tree(1 + static_cast<int>(seed % 40), 2 + static_cast<int>(seed % 4), seed);
    CHECK(t.max_degree() <= 2 + static_cast<int>(seed % 4));
  }
}

TEST_CASE("augmented two-clique host admits the three-branch tree") {
  for (int k : {6, 9}) {
    auto h = gen_two_cliques_apex_sized(2 * k / 3);
    CHECK(recount_min_degree(h.graph) == 2 * k / 3);
    auto out = brute_force_embed(h.graph, gen_three_branch_tree(k));
    REQUIRE(out.status == EmbedStatus::found);
    CHECK(ref::embedding_ok(h.graph, gen_three_branch_tree(k), out.embedding->map));
  }
}
