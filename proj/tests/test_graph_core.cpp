#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "treebed/graph.hpp"
#include "treebed/random.hpp"

#include <doctest.h>

#include <algorithm>

using namespace treebed;

namespace {

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph two_triangles() {
  std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  return Graph(6, e);
}

VertexSet vs(int universe, std::vector<Vertex> m) { return VertexSet(universe, std::move(m)); }

std::vector<Vertex> members(const VertexSet& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("graph construction merges duplicates and rejects loops") {
  std::vector<Edge> e{{0, 1}, {1, 0}, {1, 2}};
  Graph g(3, e);
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacent(0, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS(Graph(3, loop));
  std::vector<Edge> out{{0, 3}};
  CHECK_THROWS(Graph(3, out));
}

TEST_CASE("vertex sets are sorted and deduplicated") {
  VertexSet s(6, {4, 1, 4, 2});
  CHECK(members(s) == std::vector<Vertex>{1, 2, 4});
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(3));
  CHECK_THROWS(VertexSet(3, {3}));
  CHECK(members(set_difference(VertexSet::all(6), s)) == std::vector<Vertex>{0, 3, 5});
}

TEST_CASE("periphery examples") {
  CHECK(members(periphery(path_graph(3), vs(3, {1}), 1)) == std::vector<Vertex>{0, 2});
  CHECK(members(periphery(complete_graph(4), vs(4, {0, 1}), 2)) == std::vector<Vertex>{2, 3});
  Rng rng(3);
  Graph g = gen::graph(rng, 9, 1, 3);
  CHECK(periphery(g, vs(9, {0, 5}), 0) == VertexSet::all(9));
}

TEST_CASE("second neighbourhood examples") {
  CHECK(members(second_neighbourhood(path_graph(3), 0)) == std::vector<Vertex>{2});
  CHECK(members(second_neighbourhood(complete_graph(4), 0)) == std::vector<Vertex>{1, 2, 3});
  std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
  CHECK(second_neighbourhood(Graph(4, star), 0).empty());
}

TEST_CASE("cut density examples") {
  CHECK(cut_density(complete_graph(4), CutMode::exact).density == Rational(1));
  auto two = cut_density(two_triangles(), CutMode::exact);
  CHECK(two.density == Rational(0));
  CHECK(two.crossing == 0);
  CHECK(two.side_a.size() == 3);
  auto p = cut_density(path_graph(3), CutMode::exact);
  CHECK(p.density == Rational(1, 2));
  CHECK(ref::crossing_edges(path_graph(3), members(p.side_a)) == 1);
  CHECK(p.side_a.size() + p.side_b.size() == 3);
}

TEST_CASE("exact cut density refuses graphs above the cap") {
  CutOptions small;
  small.exact_cap = 5;
  CHECK_THROWS_AS(cut_density(complete_graph(7), CutMode::exact, small), ExactCapExceeded);
}

TEST_CASE("is_cut_dense examples") {
  Rng rng(11);
  Graph g = gen::graph(rng, 8, 1, 2);
  CHECK(is_cut_dense(g, Rational(0), CutMode::exact).verdict == Verdict::yes);
  auto r = is_cut_dense(two_triangles(), Rational(1, 10), CutMode::exact);
  CHECK(r.verdict == Verdict::no);
  REQUIRE(r.witness);
  CHECK(r.witness->crossing == 0);
  CHECK(is_cut_dense(complete_graph(6), Rational(1), CutMode::exact).verdict == Verdict::yes);
}

TEST_CASE("vertex cover examples") {
  std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}};
  auto c = vertex_cover_at_most(Graph(6, star), 1);
  REQUIRE(c);
  CHECK(members(*c) == std::vector<Vertex>{0});
  CHECK_FALSE(vertex_cover_at_most(cycle_graph(5), 2));
  auto c3 = vertex_cover_at_most(cycle_graph(5), 3);
  REQUIRE(c3);
  CHECK(c3->size() <= 3);
  CHECK(ref::is_vertex_cover(cycle_graph(5), members(*c3)));
  auto none = vertex_cover_at_most(Graph(4), 0);
  REQUIRE(none);
  CHECK(none->empty());
}

TEST_CASE("bipartite matching examples") {
  std::vector<Edge> k33;
  for (int u = 0; u < 3; ++u)
    for (int v = 3; v < 6; ++v) k33.emplace_back(u, v);
  CHECK(bipartite_matching_lower(Graph(6, k33), vs(6, {0, 1, 2}), vs(6, {3, 4, 5})).size() == 3);
  std::vector<Edge> fan{{0, 1}, {0, 2}, {0, 3}};
  CHECK(bipartite_matching_lower(Graph(4, fan), vs(4, {0}), vs(4, {1, 2, 3})).size() == 1);
  std::vector<Edge> two{{0, 2}, {0, 3}, {1, 4}, {1, 5}};
  CHECK(bipartite_matching_lower(Graph(6, two), vs(6, {0, 1}), vs(6, {2, 3, 4, 5})).size() == 2);
}

TEST_CASE("short even walk examples") {
  auto w = short_even_walk(path_graph(3), 0, 2);
  REQUIRE(w);
  CHECK(*w == std::vector<Vertex>{0, 1, 2});
  auto c5 = short_even_walk(cycle_graph(5), 0, 1);
  REQUIRE(c5);
  CHECK(c5->size() == 5);
  std::vector<Edge> k22{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  CHECK_FALSE(short_even_walk(Graph(4, k22), 0, 2));
}

TEST_CASE("path in range examples") {
  auto k6 = path_in_range(complete_graph(6), 0, 1, 2, 3, 1);
  REQUIRE(k6.path);
  const int len = static_cast<int>(k6.path->size()) - 1;
  CHECK(len >= 3);
  CHECK(len <= 5);
  auto longway = path_in_range(cycle_graph(7), 0, 1, 5, 1, 1);
  REQUIRE(longway.path);
  CHECK(longway.path->size() == 7);
  auto absent = path_in_range(cycle_graph(7), 0, 1, 2, 1, 1);
  CHECK_FALSE(absent.path);
  CHECK(absent.exhaustive);
}

TEST_CASE("diameter examples") {
  CHECK(diameter(complete_graph(5)) == 1);
  CHECK(diameter(cycle_graph(6)) == 3);
  CHECK(diameter_bound(cycle_graph(6)) == 5);
  CHECK(diameter(path_graph(5)) == 4);
  CHECK_THROWS_AS(diameter(two_triangles()), Disconnected);
}

TEST_CASE("bipartition examples") {
  auto c6 = bipartition(cycle_graph(6));
  REQUIRE(c6);
  CHECK(members(c6->first) == std::vector<Vertex>{0, 2, 4});
  CHECK(members(c6->second) == std::vector<Vertex>{1, 3, 5});
  CHECK_FALSE(bipartition(cycle_graph(5)));
  auto empty = bipartition(Graph(3));
  REQUIRE(empty);
  CHECK(members(empty->first) == std::vector<Vertex>{0, 1, 2});
  CHECK(empty->second.empty());
}

TEST_CASE("property: periphery is monotone in the threshold") {
  Rng rng(derive_seed(7, 1, 0));
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.between(1, 14);
    Graph g = gen::graph(rng, n, rng.between(1, 9), 10);
    std::vector<char> mask(n);
    for (auto& m : mask) m = rng.chance(1, 2);
    VertexSet s = VertexSet::from_mask(mask);
    const int d = rng.between(0, 5), d2 = d + rng.between(0, 4);
    auto big = periphery(g, s, d), small = periphery(g, s, d2);
    CHECK(set_difference(small, big).empty());
    for (Vertex v = 0; v < n; ++v) {
      int c = 0;
      for (Vertex w : g.neighbours(v)) c += s.contains(w);
      CHECK(big.contains(v) == (c >= d));
    }
  }
}

TEST_CASE("property: an induced subgraph of minimum degree d lies in its own d-periphery") {
  Rng rng(derive_seed(7, 2, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.between(2, 14);
    Graph g = gen::graph(rng, n, rng.between(3, 9), 10);
    std::vector<char> mask(n);
    for (auto& m : mask) m = rng.chance(2, 3);
    VertexSet h = VertexSet::from_mask(mask);
    if (h.empty()) continue;
    const int d = min_degree_within(g, h);
    CHECK(set_difference(h, periphery(g, h, d)).empty());
  }
}

TEST_CASE("property: exact cut density matches re-enumeration") {
  Rng rng(derive_seed(7, 3, 0));
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.between(2, 10);
    Graph g = gen::graph(rng, n, rng.between(1, 9), 10);
    auto w = cut_density(g, CutMode::exact);
    CHECK(w.density == ref::min_cut_density(g));
    CHECK(w.exact);
    CHECK(w.crossing == ref::crossing_edges(g, members(w.side_a)));
    CHECK(w.density == Rational(w.crossing, static_cast<std::int64_t>(w.side_a.size()) * w.side_b.size()));
  }
}

TEST_CASE("property: heuristic cut density never undercuts the exact minimum") {
  Rng rng(derive_seed(7, 4, 0));
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.between(2, 12);
    Graph g = gen::graph(rng, n, rng.between(2, 9), 10);
    auto h = cut_density(g, CutMode::heuristic);
    CHECK(h.density >= ref::min_cut_density(g));
    CHECK(h.crossing == ref::crossing_edges(g, members(h.side_a)));
  }
}

TEST_CASE("property: vertex cover bound agrees with subset enumeration") {
  Rng rng(derive_seed(7, 5, 0));
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.between(1, 13);
    Graph g = gen::graph(rng, n, rng.between(1, 6), 10);
    const int tau = ref::min_vertex_cover_size(g);
    auto at = vertex_cover_at_most(g, tau);
    REQUIRE(at);
    CHECK(at->size() <= tau);
    CHECK(ref::is_vertex_cover(g, members(*at)));
    if (tau > 0) CHECK_FALSE(vertex_cover_at_most(g, tau - 1));
  }
}

TEST_CASE("property: maximum bipartite matching agrees with exhaustive search") {
  Rng rng(derive_seed(7, 6, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const int nx = rng.between(1, 6), ny = rng.between(1, 7);
    Graph g0 = gen::graph(rng, nx + ny, rng.between(1, 9), 10);
    std::vector<Edge> extra;
    for (int y = nx; y < nx + ny; ++y) extra.emplace_back(rng.between(0, nx - 1), y);
    Graph g = add_edges(g0, extra);
    std::vector<Vertex> xs, ys;
    for (int i = 0; i < nx; ++i) xs.push_back(i);
    for (int i = nx; i < nx + ny; ++i) ys.push_back(i);
    auto m = bipartite_matching_lower(g, VertexSet(nx + ny, xs), VertexSet(nx + ny, ys));
    CHECK(m.size() == ref::max_bipartite_matching(g, xs, ys));
    std::vector<char> used(nx + ny, 0);
    for (auto [x, y] : m.pairs) {
      CHECK(x < nx);
      CHECK(y >= nx);
      CHECK(g.adjacent(x, y));
      CHECK_FALSE(used[x]);
      CHECK_FALSE(used[y]);
      used[x] = used[y] = 1;
    }
  }
}

TEST_CASE("property: even walks are shortest and valid") {
  Rng rng(derive_seed(7, 7, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.between(2, 14);
    Graph g = gen::graph(rng, n, rng.between(1, 6), 10);
    const int u = rng.between(0, n - 1);
    int v = rng.between(0, n - 2);
    if (v >= u) ++v;
    auto w = short_even_walk(g, u, v);
    auto expect = ref::shortest_even_walk(g, u, v);
    CHECK(w.has_value() == expect.has_value());
    if (!w || !expect) continue;
    CHECK(static_cast<int>(w->size()) - 1 == *expect);
    CHECK(w->front() == u);
    CHECK(w->back() == v);
    for (std::size_t i = 0; i + 1 < w->size(); ++i) CHECK(g.adjacent((*w)[i], (*w)[i + 1]));
  }
}

TEST_CASE("property: path_in_range returns simple paths inside the window") {
  Rng rng(derive_seed(7, 8, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.between(3, 16);
    Graph g = gen::connected_graph(rng, n, 2, rng.between(1, 5), 10);
    const int y = rng.between(0, n - 1);
    int z = rng.between(0, n - 2);
    if (z >= y) ++z;
    const int ell = rng.between(0, n), slack = rng.between(1, 4);
    auto r = path_in_range(g, y, z, ell, slack, rng.next());
    if (!r.path) continue;
    const auto& p = *r.path;
    const int len = static_cast<int>(p.size()) - 1;
    CHECK(len >= ell + 1);
    CHECK(len <= ell + slack);
    CHECK(p.front() == y);
    CHECK(p.back() == z);
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(g.adjacent(p[i], p[i + 1]));
  }
}

TEST_CASE("property: diameter matches BFS") {
  Rng rng(derive_seed(7, 9, 0));
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = gen::connected_graph(rng, rng.between(1, 20), 1, rng.between(0, 3), 10);
    CHECK(diameter(g) == ref::diameter(g));
  }
}
