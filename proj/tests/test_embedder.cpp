#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "treebed/constructions.hpp"
#include "treebed/embed.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace treebed;

namespace {

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Tree star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Tree(leaves + 1, e);
}

// Disjoint cliques on consecutive ids starting at `first`.
void add_clique(std::vector<Edge>& e, int first, int size) {
  for (int u = first; u < first + size; ++u)
    for (int v = u + 1; v < first + size; ++v) e.emplace_back(u, v);
}

VertexSet range_set(int universe, int first, int size) {
  std::vector<Vertex> m;
  for (int v = first; v < first + size; ++v) m.push_back(v);
  return VertexSet(universe, m);
}

bool sound(const Graph& g, const Tree& t, const EmbedOutcome& out) {
  return out.status == EmbedStatus::found && out.embedding &&
         ref::embedding_ok(g, t, out.embedding->map);
}

// x = 0 joined to every vertex of two disjoint K5's on 1..5 and 6..10
Graph apex_two_k5() {
  std::vector<Edge> e;
  add_clique(e, 1, 5);
  add_clique(e, 6, 5);
  for (int v = 1; v <= 10; ++v) e.emplace_back(0, v);
  return Graph(11, e);
}

}  // namespace

TEST_CASE("validator examples") {
  std::vector<Edge> c4{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  Graph g(4, c4);
  Embedding id(4);
  id.map = {0, 1, 2, 3};
  CHECK(validate(g, gen_path(4), id).ok);
  Embedding clash(4);
  clash.map = {0, 1, 2, 2};
  CHECK_FALSE(validate(g, gen_path(4), clash).ok);
  Embedding into_empty(3);
  into_empty.map = {0, 1, 2};
  CHECK_FALSE(validate(Graph(3), gen_path(3), into_empty).ok);
  Embedding partial(4);
  partial.map = {0, 1, kUnmapped, kUnmapped};
  CHECK_FALSE(validate(g, gen_path(4), partial).ok);
  CHECK(validate_partial(g, gen_path(4), partial).ok);
}

TEST_CASE("greedy embedding examples") {
  auto p4 = gen_path(4).with_root(0);
  CHECK(sound(complete_graph(5), p4, greedy_embed(complete_graph(5), p4, 2)));

  std::vector<Edge> e;
  add_clique(e, 1, 4);
  for (int v = 1; v <= 3; ++v) e.emplace_back(0, v);
  Graph g(5, e);
  auto k13 = star(3).with_root(0);
  CHECK(sound(g, k13, greedy_embed(g, k13, 0)));

  std::vector<Edge> thin{{0, 1}, {1, 2}, {2, 3}, {1, 3}};
  CHECK_THROWS_AS(greedy_embed(Graph(4, thin), star(3).with_root(0), 0), PreconditionViolated);
}

TEST_CASE("apex split examples") {
  Graph g = apex_two_k5();
  VertexSet c1 = range_set(11, 1, 5), c2 = range_set(11, 6, 5);
  Tree fig1 = gen_three_branch_tree(6);
  auto out = apex_split_embed(g, 0, c1, c2, fig1);
  REQUIRE(sound(g, fig1, out));
  const auto& map = out.embedding->map;
  int in_c1 = 0, in_c2 = 0;
  for (Vertex v = 1; v < 7; ++v) (c1.contains(map[v]) ? in_c1 : in_c2) += 1;
  CHECK(((in_c1 == 4 && in_c2 == 2) || (in_c1 == 2 && in_c2 == 4)));
  CHECK(map[0] == 0);
  CHECK(sound(g, gen_path(7), apex_split_embed(g, 0, c1, c2, gen_path(7))));

  std::vector<Edge> e;
  for (int v = 1; v <= 5; ++v) e.emplace_back(v, v % 5 + 1);  // C5, minimum degree 2
  add_clique(e, 6, 5);
  for (int v = 1; v <= 10; ++v) e.emplace_back(0, v);
  CHECK_THROWS_AS(apex_split_embed(Graph(11, e), 0, c1, c2, fig1), PreconditionViolated);
}

TEST_CASE("apex three-way split examples") {
  std::vector<Edge> e;
  add_clique(e, 1, 6);
  add_clique(e, 7, 6);
  add_clique(e, 13, 6);
  for (int v = 1; v <= 12; ++v) e.emplace_back(0, v);
  e.emplace_back(0, 13);
  Graph g(19, e);
  VertexSet c1 = range_set(19, 1, 6), c2 = range_set(19, 7, 6), c3 = range_set(19, 13, 6);
  Tree spider = gen_three_branch_tree(6);
  CHECK(sound(g, spider, apex_three_split_embed(g, 0, c1, c2, c3, spider)));
  CHECK(sound(g, gen_path(7), apex_three_split_embed(g, 0, c1, c2, c3, gen_path(7))));

  std::vector<Edge> cut = e;
  cut.pop_back();
  CHECK_THROWS_AS(apex_three_split_embed(Graph(19, cut), 0, c1, c2, c3, spider),
                  PreconditionViolated);
}

TEST_CASE("bipartite apex examples") {
  // K_{10,10} on 1..10 | 11..20, apex 0 adjacent to two vertices on each side
  std::vector<Edge> e;
  for (int u = 1; u <= 10; ++u)
    for (int v = 11; v <= 20; ++v) e.emplace_back(u, v);
  for (int v : {1, 2, 11, 12}) e.emplace_back(0, v);
  Graph g(21, e);
  VertexSet y1 = range_set(21, 1, 10), y2 = range_set(21, 11, 10);
  Tree p = gen_path(14);
  auto out = bipartite_apex_embed(g, 0, y1, y2, p);
  REQUIRE(sound(g, p, out));
  CHECK(out.embedding->map[even_odd_split(p).root] == 0);

  // a star with 13 leaves has maximum degree 13, so k > 6 maxdeg(T) fails
  CHECK_THROWS_AS(bipartite_apex_embed(g, 0, y1, y2, star(13)), PreconditionViolated);

  std::vector<Edge> odd = e;
  odd.emplace_back(1, 2);
  CHECK_THROWS_AS(bipartite_apex_embed(Graph(21, odd), 0, y1, y2, p), PreconditionViolated);
}

TEST_CASE("bipartite apex places classes by depth parity") {
  std::vector<Edge> e;
  for (int u = 1; u <= 12; ++u)
    for (int v = 13; v <= 24; ++v) e.emplace_back(u, v);
  for (int v : {1, 2, 3, 13, 14, 15}) e.emplace_back(0, v);
  Graph g(25, e);
  VertexSet y1 = range_set(25, 1, 12), y2 = range_set(25, 13, 12);
  Rng rng(derive_seed(21, 1, 0));
  int embedded = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Tree t = gen::tree(rng, rng.between(14, 19), 2);
    EmbedOutcome out;
    try {
      out = bipartite_apex_embed(g, 0, y1, y2, t);
    } catch (const PreconditionViolated&) {
      continue;
    }
    REQUIRE(sound(g, t, out));
    ++embedded;
    const auto& map = out.embedding->map;
    const Vertex r = [&] {
      for (Vertex v = 0; v < t.vertex_count(); ++v)
        if (map[v] == 0) return v;
      return kUnmapped;
    }();
    REQUIRE(r != kUnmapped);
    auto dist = ref::bfs(ref::adjacency(t), r);
    // each component of T - r sits with its odd layer on one side and even layer on the other
    std::vector<char> blocked(t.vertex_count(), 0);
    blocked[r] = 1;
    for (auto& comp : ref::components(ref::adjacency(t), blocked)) {
      std::set<int> odd_side, even_side;
      for (int v : comp) (dist[v] % 2 ? odd_side : even_side).insert(y1.contains(map[v]) ? 1 : 2);
      CHECK(odd_side.size() == 1);
      CHECK(even_side.size() <= 1);
      if (!even_side.empty()) CHECK(*odd_side.begin() != *even_side.begin());
    }
  }
  CHECK(embedded > 0);
}

TEST_CASE("embedding via a path examples") {
  // x = 0; A = 1..10, B1 = 11..20, B2 = 21..30, each a K10; bridge a = 10, b = 21
  std::vector<Edge> e;
  add_clique(e, 1, 10);
  add_clique(e, 11, 10);
  add_clique(e, 21, 10);
  for (int v : {1, 2, 3, 11, 12, 13}) e.emplace_back(0, v);
  e.emplace_back(10, 21);
  e.emplace_back(20, 22);
  Graph g(31, e);
  VertexSet a_set = range_set(31, 1, 10), b1 = range_set(31, 11, 10), b2 = range_set(31, 21, 10);
  Tree spider = gen_three_branch_tree(12);
  PathEmbedReport rep;
  auto out = embed_via_path(g, 0, a_set, b1, b2, 10, 21, spider, {}, &rep);
  CHECK(sound(g, spider, out));
  CHECK(rep.placed_in_a <= a_set.size());

  Tree p13 = gen_path(13);
  CHECK(sound(g, p13, embed_via_path(g, 0, a_set, b1, b2, 10, 21, p13)));

  std::vector<Edge> no_bridge = e;
  no_bridge.erase(std::find(no_bridge.begin(), no_bridge.end(), Edge{10, 21}));
  CHECK_THROWS_AS(embed_via_path(Graph(31, no_bridge), 0, a_set, b1, b2, 10, 21, spider),
                  PreconditionViolated);
}

TEST_CASE("matching forest examples") {
  // core K14 on 0..13, three pendant K8's each tied to the core by one edge
  std::vector<Edge> e;
  add_clique(e, 0, 14);
  std::vector<Portal> portals;
  for (int j = 0; j < 3; ++j) {
    const int first = 14 + 8 * j;
    add_clique(e, first, 8);
    e.emplace_back(j, first);
  }
  Graph g(38, e);
  for (int j = 0; j < 3; ++j) portals.push_back({j, 14 + 8 * j, range_set(38, 14 + 8 * j, 8)});
  VertexSet core = range_set(38, 0, 14);
  Tree cat = gen_caterpillar(7, 6, 3, 3);
  REQUIRE(cat.edge_count() == 12);
  REQUIRE(cat.max_degree() == 3);
  CHECK(sound(g, cat, matching_forest_embed(g, core, portals, cat)));

  Tree fig1 = gen_three_branch_tree(6);
  REQUIRE(msf_decomposition(fig1).matching.empty());
  auto plain = matching_forest_embed(g, core, {}, fig1);
  REQUIRE(sound(g, fig1, plain));
  for (Vertex h : plain.embedding->map) CHECK(core.contains(h));

  Tree bin = gen_random_tree(13, 3, 1);
  if (!msf_decomposition(bin).matching.empty())
    CHECK_THROWS_AS(matching_forest_embed(g, core, {}, bin), PreconditionViolated);
  if (!msf_decomposition(cat).matching.empty())
    CHECK_THROWS_AS(matching_forest_embed(g, core, {}, cat), PreconditionViolated);
}

TEST_CASE("oracle examples") {
  auto host = gen_two_cliques_apex(6);
  auto none = brute_force_embed(host.graph, gen_three_branch_tree(6));
  CHECK(none.status == EmbedStatus::not_found);
  CHECK_FALSE(none.embedding);
  for (int k : {3, 6, 9}) {
    std::vector<Edge> c;
    for (int i = 0; i <= k; ++i) c.emplace_back(i, (i + 1) % (k + 1));
    Graph cycle(k + 1, c);
    CHECK(sound(cycle, gen_path(k + 1), brute_force_embed(cycle, gen_path(k + 1))));
  }
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = rng.between(1, 9);
    Tree t = gen::tree(rng, k + 1, rng.between(1, 4) + 1);
    CHECK(sound(complete_graph(k + 1), t, brute_force_embed(complete_graph(k + 1), t)));
  }
}

TEST_CASE("oracle honours budgets and pins") {
  auto host = gen_two_cliques_apex(12);
  OracleOptions tiny;
  tiny.budget = 5;
  auto cut = brute_force_embed(host.graph, gen_three_branch_tree(12), tiny);
  CHECK(cut.status == EmbedStatus::budget_exhausted);
  CHECK_FALSE(cut.embedding);

  Graph k6 = complete_graph(6);
  Tree p = gen_path(4);
  OracleOptions pinned;
  Embedding pins(4);
  pins.map[0] = 5;
  pins.map[3] = 2;
  pinned.pins = pins;
  auto out = brute_force_embed(k6, p, pinned);
  REQUIRE(sound(k6, p, out));
  CHECK(out.embedding->map[0] == 5);
  CHECK(out.embedding->map[3] == 2);

  OracleOptions fenced;
  fenced.allowed = VertexSet(6, {0, 1, 2});
  CHECK(brute_force_embed(k6, p, fenced).status == EmbedStatus::not_found);
}

TEST_CASE("property: oracle agrees with naive backtracking") {
  Rng rng(derive_seed(21, 2, 0));
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.between(1, 8);
    Graph g = gen::graph(rng, n, rng.between(2, 9), 10);
    Tree t = gen::tree(rng, rng.between(1, n), rng.between(1, 4) + 1);
    auto out = brute_force_embed(g, t);
    REQUIRE(out.status != EmbedStatus::budget_exhausted);
    const bool expect = ref::embeds(g, t);
    CHECK((out.status == EmbedStatus::found) == expect);
    if (out.status == EmbedStatus::found) CHECK(ref::embedding_ok(g, t, out.embedding->map));
  }
}

TEST_CASE("property: greedy embedding is total under its degree conditions") {
  Rng rng(derive_seed(21, 3, 0));
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = rng.between(1, 12);
    Tree t = gen::tree(rng, k + 1, rng.between(2, 5)).with_root(static_cast<Vertex>(rng.below(k + 1)));
    const int n = rng.between(k + 2, k + 12);
    Graph rest = gen::connected_graph(rng, n - 1, k, rng.between(0, 3), 10);
    // x = n - 1 joined to enough of the rest
    std::vector<Edge> e = rest.edges();
    const int dx = rng.between(t.max_degree(), n - 1);
    std::vector<int> pool(n - 1);
    for (int i = 0; i < n - 1; ++i) pool[i] = i;
    rng.shuffle(pool.begin(), pool.end());
    for (int i = 0; i < dx; ++i) e.emplace_back(pool[i], n - 1);
    Graph g(n, e);
    auto out = greedy_embed(g, t, n - 1);
    CHECK(sound(g, t, out));
    CHECK(out.embedding->map[*t.root()] == n - 1);
    ++checked;
  }
  CHECK(checked == 1000);
}
