#include "treebed/constructions.hpp"

#include "treebed/random.hpp"

#include <algorithm>
#include <queue>

namespace treebed {
namespace {

void add_clique(std::vector<Edge>& edges, Vertex first, int size) {
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) edges.emplace_back(first + i, first + j);
}

VertexSet range_set(int universe, Vertex first, int size) {
  std::vector<Vertex> m;
  for (int i = 0; i < size; ++i) m.push_back(first + i);
  return VertexSet(universe, std::move(m));
}

void expect(bool ok, const char* what) {
  if (!ok) throw PostconditionViolated(what);
}

}  // namespace

ApexHost gen_two_cliques_apex_sized(int clique_size) {
  if (clique_size < 1) throw PreconditionViolated("clique size must be positive");
  const int n = 2 * clique_size + 1;
  std::vector<Edge> edges;
  add_clique(edges, 0, clique_size);
  add_clique(edges, clique_size, clique_size);
  const Vertex apex = n - 1;
  for (Vertex v = 0; v < apex; ++v) edges.emplace_back(v, apex);
  ApexHost h{Graph(n, edges), apex,
             {range_set(n, 0, clique_size), range_set(n, clique_size, clique_size)}};
  expect(h.graph.min_degree() == clique_size && h.graph.degree(apex) == 2 * clique_size,
         "two-clique host degree profile");
  return h;
}

ApexHost gen_two_cliques_apex(int k) {
  if (k < 3 || k % 3 != 0) throw PreconditionViolated("k must be a positive multiple of 3");
  auto h = gen_two_cliques_apex_sized(2 * k / 3 - 1);
  expect(h.graph.min_degree() == 2 * k / 3 - 1 && h.graph.max_degree() == 4 * k / 3 - 2,
         "two-clique host degree profile");
  return h;
}

Tree gen_three_branch_tree(int k) {
  if (k < 3 || k % 3 != 0) throw PreconditionViolated("k must be a positive multiple of 3");
  const int len = k / 3;
  std::vector<Edge> edges;
  for (int b = 0; b < 3; ++b) {
    Vertex first = 1 + b * len;
    edges.emplace_back(0, first);
    for (int i = 1; i < len; ++i) edges.emplace_back(first + i - 1, first + i);
  }
  Tree t(k + 1, edges);
  expect(t.max_degree() == 3 && t.degree(0) == 3, "three-branch tree degree profile");
  return t;
}

Tree gen_spider(int k, int ell) {
  if (ell < 1 || k < ell || k % ell != 0)
    throw PreconditionViolated("spider needs ell >= 1 dividing k");
  const int per = k / ell;
  std::vector<Edge> edges;
  Vertex next = 1 + ell;
  for (int i = 0; i < ell; ++i) {
    edges.emplace_back(0, 1 + i);
    for (int j = 0; j < per; ++j) edges.emplace_back(1 + i, next++);
  }
  Tree t(next, edges);
  expect(t.edge_count() == ell + k && t.max_degree() == std::max(ell, per + 1),
         "spider degree profile");
  return t;
}

BpsHost gen_bps_host_sized(int small_part, int big_part) {
  if (small_part < 1 || big_part < small_part)
    throw PreconditionViolated("bipartite host needs 1 <= small <= big");
  const int copy = small_part + big_part;
  const int n = 2 * copy + 1;
  BpsHost h;
  h.apex = n - 1;
  h.small_part = small_part;
  h.big_part = big_part;
  std::vector<Edge> edges;
  for (int c = 0; c < 2; ++c) {
    Vertex base = c * copy;
    for (int i = 0; i < small_part; ++i)
      for (int j = 0; j < big_part; ++j) edges.emplace_back(base + i, base + small_part + j);
    for (int j = 0; j < big_part; ++j) edges.emplace_back(base + small_part + j, h.apex);
    h.small_classes.push_back(range_set(n, base, small_part));
    h.big_classes.push_back(range_set(n, base + small_part, big_part));
  }
  h.graph = Graph(n, edges);
  bool ok = h.graph.degree(h.apex) == 2 * big_part;
  for (int c = 0; c < 2; ++c) {
    for (Vertex v : h.small_classes[c]) ok = ok && h.graph.degree(v) == big_part;
    for (Vertex v : h.big_classes[c]) ok = ok && h.graph.degree(v) == small_part + 1;
  }
  expect(ok, "bipartite apex host degree profile");
  return h;
}

BpsHost gen_bps_alpha_host(int k, const Rational& alpha) {
  if (k < 1 || alpha <= 0 || alpha >= Rational(1, 3))
    throw PreconditionViolated("bipartite apex host needs k >= 1 and 0 < alpha < 1/3");
  const int small = static_cast<int>(ceil_of((1 + alpha) * k / 2));
  const int big = static_cast<int>(ceil_of((1 - alpha) * k));
  return gen_bps_host_sized(small, big);
}

ApexHost gen_clique_chain_apex(int k, int d) {
  if (k < 4 || d < 1) throw PreconditionViolated("clique chain needs k >= 4 and d >= 1");
  const int size = k / 2 - 1;
  const int n = d * size + 1;
  const Vertex apex = n - 1;
  std::vector<Edge> edges;
  ApexHost h;
  for (int c = 0; c < d; ++c) {
    add_clique(edges, c * size, size);
    edges.emplace_back(c * size, apex);
    h.parts.push_back(range_set(n, c * size, size));
  }
  h.graph = Graph(n, edges);
  h.apex = apex;
  bool ok = h.graph.degree(apex) == d;
  for (const auto& p : h.parts) ok = ok && count_neighbours_in(h.graph, apex, p) == 1;
  expect(ok, "clique chain degree profile");
  return h;
}

Graph gen_complete_bipartite(int m, int n) {
  if (m < 1 || n < 1) throw PreconditionViolated("complete bipartite needs m, n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) edges.emplace_back(i, m + j);
  Graph g(m + n, edges);
  expect(g.edge_count() == static_cast<std::int64_t>(m) * n, "complete bipartite edge count");
  return g;
}

Tree gen_path(int n) {
  if (n < 1) throw PreconditionViolated("path needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return Tree(n, edges);
}

Tree gen_random_tree(int n, int max_deg, std::uint64_t seed) {
  if (n < 1) throw PreconditionViolated("random tree needs n >= 1");
  if (n == 1) return Tree(1, {});
  if (n == 2) {
    if (max_deg < 1) throw Infeasible("max degree below 1");
    return Tree(2, {{0, 1}});
  }
  if (max_deg < 2) throw Infeasible("a tree on 3+ vertices needs max degree >= 2");
  Rng rng(seed);
  // Pruefer sequence where no symbol appears max_deg - 1 times or more
  std::vector<int> count(n, 0);
  std::vector<Vertex> code;
  code.reserve(n - 2);
  while (static_cast<int>(code.size()) < n - 2) {
    Vertex s = static_cast<Vertex>(rng.below(n));
    if (count[s] + 1 > max_deg - 1) continue;
    ++count[s];
    code.push_back(s);
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (count[v] == 0) leaves.push(v);
  std::vector<Edge> edges;
  for (Vertex s : code) {
    Vertex leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, s);
    if (--count[s] == 0) leaves.push(s);
  }
  Vertex a = leaves.top();
  leaves.pop();
  edges.emplace_back(a, leaves.top());
  Tree t(n, edges);
  expect(t.max_degree() <= max_deg, "random tree degree cap");
  return t;
}

Graph gen_random_graph_min_degree(int n, int delta, std::uint64_t seed,
                                  const Rational& extra_edge_probability) {
  if (n < 1 || delta < 0) throw PreconditionViolated("random graph needs n >= 1, delta >= 0");
  if (delta >= n) throw Infeasible("minimum degree must be below n");
  Rng rng(seed);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<int> deg(n, 0);
  auto link = [&](Vertex u, Vertex v) {
    adj[u][v] = adj[v][u] = 1;
    ++deg[u];
    ++deg[v];
  };
  if (extra_edge_probability > 0)
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.chance(extra_edge_probability.numerator(), extra_edge_probability.denominator()))
          link(u, v);
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  rng.shuffle(order.begin(), order.end());
  for (Vertex v : order) {
    while (deg[v] < delta) {
      // prefer partners that still need edges themselves
      std::vector<Vertex> needy, other;
      for (Vertex w = 0; w < n; ++w) {
        if (w == v || adj[v][w]) continue;
        (deg[w] < delta ? needy : other).push_back(w);
      }
      auto& pool = needy.empty() ? other : needy;
      link(v, pool[rng.below(pool.size())]);
    }
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (adj[u][v]) edges.emplace_back(u, v);
  Graph g(n, edges);
  expect(g.min_degree() >= delta, "random graph minimum degree");
  return g;
}

Tree gen_caterpillar(int spine, int legs, std::uint64_t seed, int max_deg) {
  if (spine < 1 || legs < 0) throw PreconditionViolated("caterpillar needs spine >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<int> deg(spine, 0);
  for (int i = 1; i < spine; ++i) {
    edges.emplace_back(i - 1, i);
    ++deg[i - 1];
    ++deg[i];
  }
  Vertex next = spine;
  for (int l = 0; l < legs; ++l) {
    std::vector<Vertex> room;
    for (Vertex s = 0; s < spine; ++s)
      if (max_deg == 0 || deg[s] < max_deg) room.push_back(s);
    if (room.empty()) throw Infeasible("caterpillar spine has no room for more legs");
    Vertex s = room[rng.below(room.size())];
    ++deg[s];
    edges.emplace_back(s, next++);
  }
  Tree t(next, edges);
  expect(max_deg == 0 || t.max_degree() <= max_deg, "caterpillar degree cap");
  return t;
}

}  // namespace treebed
