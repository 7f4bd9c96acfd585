#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "treebed/constructions.hpp"
#include "treebed/decomposition.hpp"

#include <doctest.h>

#include <algorithm>

using namespace treebed;

namespace {

void add_clique(std::vector<Edge>& e, int first, int size) {
  for (int u = first; u < first + size; ++u)
    for (int v = u + 1; v < first + size; ++v) e.emplace_back(u, v);
}

VertexSet range_set(int universe, int first, int size) {
  std::vector<Vertex> m;
  for (int v = first; v < first + size; ++v) m.push_back(v);
  return VertexSet(universe, m);
}

Graph cliques(int count, int size) {
  std::vector<Edge> e;
  for (int i = 0; i < count; ++i) add_clique(e, i * size, size);
  return Graph(count * size, e);
}

// Reference version of the four richness conditions on g[h], exact throughout.
bool rich_by_hand(const Graph& g, const VertexSet& h, const RichParams& p) {
  auto sub = induced_subgraph(g, h).graph;
  const int n = sub.vertex_count();
  int mindeg = n == 0 ? 0 : sub.vertex_count();
  for (Vertex v = 0; v < n; ++v) mindeg = std::min(mindeg, sub.degree(v));
  if (Rational(mindeg) < p.c * p.k) return false;
  if (ref::min_vertex_cover_size(sub) > 3 * p.k) return false;
  if (n >= 2 && ref::min_cut_density(sub) < p.rho) return false;
  return n < 100 * p.k;
}

}  // namespace

TEST_CASE("rich predicate examples") {
  Graph k60 = cliques(1, 60);
  auto yes = is_rich(k60, VertexSet::all(60), {Rational(1, 2), Rational(1, 10), 100}, CutMode::heuristic);
  CHECK(yes.rich() == Verdict::yes);
  CHECK(yes.min_degree == 59);
  CHECK(yes.cover_ok);
  CHECK(yes.size_ok);

  Graph two = cliques(2, 60);
  auto split = is_rich(two, VertexSet::all(120), {Rational(1, 2), Rational(1, 10), 100}, CutMode::heuristic);
  CHECK(split.rich() == Verdict::no);
  CHECK(split.cut_dense == Verdict::no);
  REQUIRE(split.cut_witness);
  CHECK(split.cut_witness->crossing == 0);

  Graph k40 = cliques(1, 40);
  auto low = is_rich(k40, VertexSet::all(40), {Rational(1, 2), Rational(0), 100}, CutMode::heuristic);
  CHECK(low.rich() == Verdict::no);
  CHECK_FALSE(low.min_degree_ok);

  CHECK_THROWS_AS(is_rich(k40, VertexSet::none(40), {Rational(1, 2), Rational(0), 100}, CutMode::exact),
                  PreconditionViolated);
}

TEST_CASE("rho presets") {
  CHECK(refine_rho_preset(Rational(1, 10)) == Rational(1, 2'000'000));
  CHECK(rich_rho_preset(Rational(1, 10)) == Rational(1, 1'000'000'000'000));
  CHECK(rich_rho_preset_small(Rational(1)) == Rational(1, 1'000'000'000'000));
}

TEST_CASE("refinement cuts a bridge between two cliques") {
  std::vector<Edge> e;
  add_clique(e, 0, 8);
  add_clique(e, 8, 8);
  e.emplace_back(7, 8);
  Graph g(16, e);
  RefineParams p;
  p.k = 8;
  p.rho = Rational(1, 20);
  auto r = refine_cut_dense(g, p, CutMode::exact);
  REQUIRE(r.log.size() == 1);
  CHECK(r.log[0].crossing == 1);
  CHECK(r.log[0].removed.empty());
  CHECK(r.deleted_vertices == 0);
  REQUIRE(r.components.size() == 2);
  CHECK(r.components[0] == range_set(16, 0, 8));
  CHECK(r.components[1] == range_set(16, 8, 8));
  CHECK_FALSE(r.h.adjacent(7, 8));
  for (auto& c : r.components) {
    auto sub = induced_subgraph(r.h, c).graph;
    CHECK(ref::min_cut_density(sub) == Rational(1));
  }
  CHECK(r.deletion_bound_ok);
  CHECK(r.degree_bound_ok);
  CHECK(r.components_certified);
}

TEST_CASE("refinement leaves a dense clique alone") {
  Graph k12 = cliques(1, 12);
  RefineParams p;
  p.k = 12;
  auto r = refine_cut_dense(k12, p, CutMode::exact);
  CHECK(r.log.empty());
  CHECK(r.h == k12);
  CHECK(r.kept == VertexSet::all(12));
}

TEST_CASE("refinement deletes the middle of a barbell") {
  // K8's on 0..7 and 10..17; 8 sees five of the first, 9 sees five of the second, and 8 - 9
  std::vector<Edge> e;
  add_clique(e, 0, 8);
  add_clique(e, 10, 8);
  for (int v = 0; v < 5; ++v) {
    e.emplace_back(v, 8);
    e.emplace_back(10 + v, 9);
  }
  e.emplace_back(8, 9);
  Graph g(18, e);
  RefineParams p;
  p.k = 8;
  p.rho = Rational(1, 20);
  p.relax = true;
  auto r = refine_cut_dense(g, p, CutMode::exact);
  CHECK_FALSE(r.relaxed_preconditions);
  REQUIRE(r.log.size() == 1);
  CHECK(r.log[0].density == Rational(1, 81));
  CHECK(r.log[0].removed == VertexSet(18, {8, 9}));
  CHECK(r.kept.size() == 16);
  CHECK(r.components.size() == 2);
  CHECK(r.min_degree == 7);
  // two deletions exceed 200 delta n = 1.8
  CHECK_FALSE(r.deletion_bound_ok);
  CHECK(r.degree_bound_ok);
  p.relax = false;
  CHECK_THROWS_AS(refine_cut_dense(g, p, CutMode::exact), PostconditionViolated);

  std::vector<Edge> path{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(refine_cut_dense(Graph(3, path), p, CutMode::exact), PreconditionViolated);
}

TEST_CASE("component classification examples") {
  auto h = gen_two_cliques_apex(6);
  auto rep = classify_components(h.graph, h.parts, 2, 2);
  CHECK(rep.split.contains(h.apex));
  CHECK(rep.split.size() == 1);
  REQUIRE(rep.closed.size() == 2);
  CHECK(rep.closed[0]);
  CHECK(rep.closed[1]);
  CHECK(rep.outer_periphery[0] == 1);
  CHECK_FALSE(rep.maximal_coverage_verified);

  Graph g = h.graph;
  auto whole = classify_components(g, {VertexSet::all(g.vertex_count())}, 1, 1);
  for (auto& a : whole.affinity) CHECK(a.residual == 0);
  auto none = classify_components(g, {}, 1, 1);
  for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(none.affinity[v].residual == g.degree(v));

  CHECK_THROWS_AS(classify_components(g, {range_set(7, 0, 3), range_set(7, 2, 3)}, 1, 1),
                  OverlappingComponents);
}

TEST_CASE("intersection property examples") {
  auto h = gen_two_cliques_apex(6);
  IntersectionOptions loose;
  loose.check_rich = false;
  auto two = intersection_property_report(h.graph, h.parts, 3, Rational(1, 10), 6, loose);
  CHECK(two.l1.holds);

  // three disjoint K7's on 0..20 and vertex 21 with three neighbours in each
  std::vector<Edge> e;
  for (int i = 0; i < 3; ++i) add_clique(e, 7 * i, 7);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e.emplace_back(7 * i + j, 21);
  Graph g(22, e);
  std::vector<VertexSet> comps{range_set(22, 0, 7), range_set(22, 7, 7), range_set(22, 14, 7)};
  auto rep = intersection_property_report(g, comps, 3, Rational(1, 10), 8);
  CHECK_FALSE(rep.l1.holds);
  CHECK(rep.l1.vertices == std::vector<Vertex>{21});
  auto spider = gen_three_branch_tree(6);
  auto out = embed_from_l1_witness(g, comps, rep.l1, spider);
  REQUIRE(out.status == EmbedStatus::found);
  CHECK(ref::embedding_ok(g, spider, out.embedding->map));

  auto empty = intersection_property_report(g, {}, 3, Rational(1, 10), 8);
  CHECK(empty.l1.holds);
  CHECK(empty.l2.holds);
  CHECK(empty.l3.holds);
}

TEST_CASE("external and internal second neighbours, peripheral matchings") {
  // x = 0 with neighbours 1, 2, 3; vertex 3 + i reaches component 2 + i through vertex i
  std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}};
  for (int c = 0; c < 5; ++c) add_clique(e, 7 + 3 * c, 3);
  for (int i = 0; i < 3; ++i)
    for (int v = 0; v < 3; ++v) e.emplace_back(4 + i, 7 + 3 * (2 + i) + v);
  Graph g(22, e);
  std::vector<VertexSet> comps;
  for (int c = 0; c < 5; ++c) comps.push_back(range_set(22, 7 + 3 * c, 3));

  auto split = external_internal_classify(g, 0, comps, Rational(2));
  CHECK(split.external == VertexSet(22, {4, 5, 6}));
  CHECK(split.internal.empty());
  auto pair_only = external_internal_classify(g, 0, {comps[0], comps[1]}, Rational(2));
  CHECK(pair_only.external.empty());
  CHECK(pair_only.internal == VertexSet(22, {4, 5, 6}));

  auto m = x_peripheral_matching(g, 0, comps, Rational(2));
  CHECK(m.edges.size() == 3);
  auto inj = m.injection;
  std::sort(inj.begin(), inj.end());
  CHECK(inj == std::vector<int>{2, 3, 4});
  for (std::size_t i = 0; i < m.edges.pairs.size(); ++i) {
    auto [u, w] = m.edges.pairs[i];
    CHECK(g.adjacent(0, u));
    CHECK(g.adjacent(u, w));
    CHECK(count_neighbours_in(g, w, comps[m.injection[i]]) >= 2);
  }
  CHECK(x_peripheral_matching(g, 0, {comps[0], comps[1]}, Rational(2)).edges.size() == 0);

  // a lone vertex has no second neighbours at all
  std::vector<Edge> lone_edges{{1, 2}};
  auto lone = external_internal_classify(Graph(3, lone_edges), 0, {}, Rational(1));
  CHECK(lone.external.empty());
  CHECK(lone.internal.empty());

  // both external vertices hang off the single neighbour 1 and see only component 2
  std::vector<Edge> f{{0, 1}, {1, 2}, {1, 3}};
  for (int c = 0; c < 3; ++c) add_clique(f, 4 + 3 * c, 3);
  for (int w : {2, 3})
    for (int v = 0; v < 3; ++v) f.emplace_back(w, 10 + v);
  Graph h(13, f);
  std::vector<VertexSet> hc{range_set(13, 4, 3), range_set(13, 7, 3), range_set(13, 10, 3)};
  auto one = x_peripheral_matching(h, 0, hc, Rational(2));
  CHECK(one.edges.size() == 1);
  CHECK(one.injection == std::vector<int>{2});
}

TEST_CASE("rich decomposition examples") {
  Graph two = cliques(2, 60);
  auto d = rich_decompose(two, {Rational(1, 2), Rational(1, 100), 100}, CutMode::heuristic);
  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0] == range_set(120, 0, 60));
  CHECK(d.parts[1] == range_set(120, 60, 60));
  CHECK(d.uncovered.empty());
  CHECK(d.coverage == Rational(1));
  CHECK(d.heuristic);

  // K39 + K39 + apex: the best cut has density 1/40
  auto h = gen_two_cliques_apex(60);
  auto whole = rich_decompose(h.graph, {Rational(1, 2), Rational(1, 100), 60}, CutMode::heuristic);
  REQUIRE(whole.parts.size() == 1);
  CHECK(whole.parts[0] == VertexSet::all(h.graph.vertex_count()));
  auto fig = rich_decompose(h.graph, {Rational(1, 2), Rational(1, 20), 60}, CutMode::heuristic);
  REQUIRE(fig.parts.size() == 2);
  CHECK(set_intersection(fig.parts[0], h.parts[0]).size() + set_intersection(fig.parts[1], h.parts[1]).size() ==
        h.parts[0].size() + h.parts[1].size());
  CHECK(fig.uncovered.size() <= 1);

  Rng rng(3);
  Graph sparse = gen::graph(rng, 30, 1, 20);
  auto s = rich_decompose(sparse, {Rational(1, 2), Rational(1, 100), 20}, CutMode::heuristic);
  CHECK(s.parts.empty());
  CHECK(s.uncovered.size() == 30);
}

TEST_CASE("property: residual degrees add up") {
  Rng rng(derive_seed(31, 1, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.between(1, 16);
    Graph g = gen::graph(rng, n, rng.between(1, 8), 10);
    const int m = rng.between(0, 4);
    std::vector<std::vector<Vertex>> parts(m);
    for (Vertex v = 0; v < n; ++v) {
      const int c = rng.between(-1, m - 1);
      if (c >= 0) parts[c].push_back(v);
    }
    std::vector<VertexSet> comps;
    for (auto& p : parts) comps.emplace_back(n, p);
    auto rep = classify_components(g, comps, rng.between(1, 3), rng.between(1, 3));
    for (Vertex v = 0; v < n; ++v) {
      const auto& a = rep.affinity[v];
      int in = 0;
      for (int c : {a.first, a.second})
        if (c >= 0) in += count_neighbours_in(g, v, comps[c]);
      CHECK(a.residual + in == g.degree(v));
      if (a.first >= 0 && a.second >= 0)
        CHECK(count_neighbours_in(g, v, comps[a.first]) >= count_neighbours_in(g, v, comps[a.second]));
    }
  }
}

TEST_CASE("property: is_rich agrees with an independent check") {
  Rng rng(derive_seed(31, 2, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.between(2, 11);
    Graph g = gen::graph(rng, n, rng.between(3, 10), 10);
    std::vector<char> mask(n);
    for (auto& x : mask) x = rng.chance(3, 4);
    mask[rng.below(n)] = 1;
    VertexSet h = VertexSet::from_mask(mask);
    RichParams p{Rational(rng.between(0, 6), 6), Rational(rng.between(0, 8), 8), rng.between(1, 4)};
    auto rep = is_rich(g, h, p, CutMode::exact);
    CHECK(rep.rich() == (rich_by_hand(g, h, p) ? Verdict::yes : Verdict::no));
  }
}

TEST_CASE("property: raising rho never makes a set rich") {
  Rng rng(derive_seed(31, 3, 0));
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.between(2, 10);
    Graph g = gen::graph(rng, n, rng.between(4, 10), 10);
    VertexSet h = VertexSet::all(n);
    const int k = rng.between(1, 3);
    Verdict prev = Verdict::yes;
    for (int r = 0; r <= 8; ++r) {
      auto v = is_rich(g, h, {Rational(1, 4), Rational(r, 8), k}, CutMode::exact).rich();
      if (prev == Verdict::no) CHECK(v == Verdict::no);
      prev = v;
    }
  }
}
