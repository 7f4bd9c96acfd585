#include "treebed/embed.hpp"

#include "embed_detail.hpp"

#include <algorithm>
#include <numeric>

namespace treebed {

using detail::certified;
using detail::greedy_extend;
using detail::require;

namespace {

// Subset of component indices whose sizes sum into [lo, hi], if any.
std::optional<std::vector<int>> sized_subset(const std::vector<int>& sizes, const Rational& lo,
                                             const Rational& hi) {
  const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  std::vector<int> via(total + 1, -2);
  via[0] = -1;
  for (int i = 0; i < static_cast<int>(sizes.size()); ++i)
    for (int s = total; s >= sizes[i]; --s)
      if (via[s] == -2 && via[s - sizes[i]] != -2) via[s] = i;
  for (int s = 0; s <= total; ++s) {
    if (via[s] == -2 || Rational(s) < lo || Rational(s) > hi) continue;
    std::vector<int> out;
    for (int t = s; t > 0; t -= sizes[via[t]]) out.push_back(via[t]);
    std::sort(out.begin(), out.end());
    return out;
  }
  return std::nullopt;
}

std::vector<Vertex> take_from(const Graph& g, Vertex v, const std::vector<char>& pool,
                              const std::vector<char>& banned, int count) {
  std::vector<Vertex> out;
  for (Vertex w : g.neighbours(v)) {
    if (static_cast<int>(out.size()) == count) break;
    if (pool[w] && !banned[w]) out.push_back(w);
  }
  return out;
}

}  // namespace

EmbedOutcome embed_via_path(const Graph& g, Vertex x, const VertexSet& a_set,
                            const VertexSet& b1_set, const VertexSet& b2_set, Vertex a, Vertex b,
                            const Tree& t, const PathEmbedOptions& opts,
                            PathEmbedReport* report) {
  const int n = g.vertex_count();
  for (Vertex v : {x, a, b}) require(v >= 0 && v < n, "embed_via_path: vertex out of range");
  require(x != a && x != b && a != b, "embed_via_path: x, a, b must be distinct");
  require(set_intersection(a_set, b1_set).empty() && set_intersection(a_set, b2_set).empty(),
          "embed_via_path: A must be disjoint from B1 and B2");
  require(!a_set.contains(x) && !b1_set.contains(x) && !b2_set.contains(x),
          "embed_via_path: x lies in A, B1 or B2");
  require(t.vertex_count() >= 2, "embed_via_path: tree needs an edge");
  const int k = t.edge_count();
  const int delta = t.max_degree();
  const Rational eps = opts.eps;
  require(eps > 0 && eps < Rational(1, 6), "embed_via_path: eps must lie in (0, 1/6)");
  require(count_neighbours_in(g, x, a_set) >= delta && count_neighbours_in(g, x, b1_set) >= delta,
          "embed_via_path: x needs maxdeg(T) neighbours in A and in B1");
  const Rational dense = (Rational(2, 3) - eps) * k;
  for (const auto* s : {&a_set, &b1_set, &b2_set})
    require(at_least(min_degree_within(g, *s), dense),
            "embed_via_path: a class has minimum degree below (2/3 - eps) k");
  require(g.adjacent(a, b), "embed_via_path: a and b are not adjacent");
  require(count_neighbours_in(g, a, a_set) >= 2 * delta &&
              count_neighbours_in(g, b, b2_set) >= 2 * delta,
          "embed_via_path: a or b lacks 2 maxdeg(T) neighbours on its side");
  require(opts.slack >= 1, "embed_via_path: slack must be positive");

  PathEmbedReport local;
  PathEmbedReport& rep = report ? *report : local;
  rep = PathEmbedReport{};

  const Vertex r = balanced_separator_vertex(t);
  auto comps = components_without(t, r);
  std::vector<int> sizes;
  for (const auto& c : comps) sizes.push_back(c.size());
  auto rv = RootedView::build(t, r);
  auto a_mask = a_set.mask(), b1_mask = b1_set.mask(), b2_mask = b2_set.mask();

  if (auto pick = sized_subset(sizes, (Rational(1, 3) + eps) * k, dense)) {
    rep.splittable = true;
    std::vector<char> in_pick(comps.size(), 0);
    for (int i : *pick) in_pick[i] = 1;
    std::vector<Vertex> to_a, to_b;
    for (std::size_t i = 0; i < comps.size(); ++i)
      (in_pick[i] ? to_a : to_b).push_back(t.neighbours(r)[i]);
    std::vector<Vertex> phi(t.vertex_count(), kUnmapped);
    std::vector<char> used(n, 0);
    phi[r] = x;
    used[x] = 1;
    auto in = [](const std::vector<char>& m) { return [&m](Vertex, Vertex h) { return m[h] != 0; }; };
    if (greedy_extend(g, rv, to_a, in(a_mask), used, phi) != kUnmapped ||
        greedy_extend(g, rv, to_b, in(b1_mask), used, phi) != kUnmapped)
      throw std::logic_error("embed_via_path: split embedding failed under its preconditions");
    for (Vertex u = 0; u < t.vertex_count(); ++u) rep.placed_in_a += a_mask[phi[u]];
    return certified(g, t, std::move(phi), "via_path/split");
  }

  // components by decreasing size; S1 carries the heavy path
  std::vector<int> by_size(comps.size());
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](int i, int j) { return sizes[i] > sizes[j]; });
  std::vector<Vertex> heavy{r, t.neighbours(r)[by_size[0]]};
  for (;;) {
    Vertex cur = heavy.back(), next = kUnmapped;
    for (Vertex c : rv.children[cur])
      if (next == kUnmapped || rv.subtree_size[c] > rv.subtree_size[next]) next = c;
    if (next == kUnmapped) break;
    heavy.push_back(next);
  }
  const int m = static_cast<int>(heavy.size()) - 1;
  int ell = 0;
  for (int i = 1; i <= m; ++i)
    if (6 * rv.subtree_size[heavy[i]] > k) ell = i;
  if (ell == 0) throw NotFound("heavy_path", "largest component is not heavier than k/6");
  rep.heavy_index = ell;

  // reservations
  std::vector<char> banned(n, 0);
  banned[x] = banned[a] = banned[b] = 1;
  auto ya = take_from(g, x, a_mask, banned, 2);
  if (ya.size() < 2) throw NotFound("reserve", "x has fewer than two usable neighbours in A");
  const Vertex y = ya[0], y_prime = ya[1];
  banned[y] = banned[y_prime] = 1;
  auto y_b = take_from(g, x, b1_mask, banned, delta);
  if (static_cast<int>(y_b.size()) < delta)
    throw NotFound("reserve", "not enough neighbours of x left in B1");
  for (Vertex v : y_b) banned[v] = 1;
  auto z_a = take_from(g, a, a_mask, banned, delta + 1);
  if (static_cast<int>(z_a.size()) < delta + 1)
    throw NotFound("reserve", "not enough neighbours of a left in A");
  for (Vertex v : z_a) banned[v] = 1;
  auto z_b = take_from(g, b, b2_mask, banned, delta);
  if (static_cast<int>(z_b.size()) < delta)
    throw NotFound("reserve", "not enough neighbours of b left in B2");
  const Vertex a_prime = z_a[0];

  // A' = (A minus Z_A, a, y) plus a', y'
  std::vector<char> a_prime_mask = a_mask;
  for (Vertex v : z_a) a_prime_mask[v] = 0;
  a_prime_mask[a] = a_prime_mask[y] = 0;
  a_prime_mask[a_prime] = a_prime_mask[y_prime] = 1;
  auto sub = induced_subgraph(g, VertexSet::from_mask(a_prime_mask));
  const Vertex from = sub.from_parent[y_prime], to = sub.from_parent[a_prime];

  std::optional<std::vector<Vertex>> route;
  const int hi = std::min(ell + opts.slack, m - 3);
  if (hi >= ell + 1) {
    auto found = path_in_range(sub.graph, from, to, ell, hi - ell, opts.seed, opts.path);
    route = found.path;
  }
  if (!route && m - 3 >= 1) {
    auto found = path_in_range(sub.graph, from, to, 0, m - 3, opts.seed, opts.path);
    route = found.path;
    rep.relaxed_window = route.has_value();
  }
  if (!route) throw NotFound("path", "no y'-a' path of usable length inside A'");
  const int L = static_cast<int>(route->size()) - 1;
  rep.path_length = L;

  std::vector<Vertex> phi(t.vertex_count(), kUnmapped);
  std::vector<char> used(n, 0);
  auto place = [&](Vertex u, Vertex h) {
    phi[u] = h;
    used[h] = 1;
  };
  place(r, x);
  for (int i = 0; i <= L; ++i) place(heavy[i + 1], sub.to_parent[(*route)[i]]);
  place(heavy[L + 2], a);
  place(heavy[L + 3], b);

  std::vector<char> reserved = used;
  reserved[y] = 1;
  for (Vertex v : y_b) reserved[v] = 1;
  for (Vertex v : z_b) reserved[v] = 1;

  auto off_path_children = [&](int i) {
    std::vector<Vertex> out;
    for (Vertex c : rv.children[heavy[i]])
      if (c != heavy[i + 1]) out.push_back(c);
    return out;
  };
  auto fail = [](const std::string& stage, Vertex u) {
    throw NotFound(stage, "no free host vertex for tree vertex " + std::to_string(u));
  };

  // branch pieces R_1..R_{L+1} inside A', R_{L+2} hangs off a and may use Z_A
  for (int i = 1; i <= L + 2; ++i) {
    rep.branch_vertices += rv.subtree_size[heavy[i]] - rv.subtree_size[heavy[i + 1]];
    auto starts = off_path_children(i);
    const bool last = i == L + 2;
    Vertex stuck = greedy_extend(
        g, rv, starts,
        [&](Vertex, Vertex h) {
          if (last) return a_mask[h] && h != y;
          return a_prime_mask[h] && !reserved[h];
        },
        used, phi);
    if (stuck != kUnmapped) fail("branches", stuck);
  }
  rep.branch_budget_ok = Rational(rep.branch_vertices) <= (Rational(1, 3) - 3 * eps) * k;

  // the tail T(p_{L+3}) escapes into B2 through b
  {
    Vertex stuck = greedy_extend(
        g, rv, rv.children[heavy[L + 3]],
        [&](Vertex, Vertex h) {
          if (!b2_mask[h] || h == y) return false;
          return std::find(y_b.begin(), y_b.end(), h) == y_b.end();
        },
        used, phi);
    if (stuck != kUnmapped) fail("escape", stuck);
  }

  // S2 into A through y, everything else into B1 from x
  std::vector<Vertex> rest;
  for (std::size_t idx = 1; idx < by_size.size(); ++idx) {
    Vertex root_child = t.neighbours(r)[by_size[idx]];
    if (idx == 1) {
      place(root_child, y);
      Vertex stuck = greedy_extend(g, rv, rv.children[root_child],
                                   [&](Vertex, Vertex h) { return a_mask[h] != 0; }, used, phi);
      if (stuck != kUnmapped) fail("second_component", stuck);
    } else {
      rest.push_back(root_child);
    }
  }
  Vertex stuck = greedy_extend(g, rv, rest, [&](Vertex, Vertex h) { return b1_mask[h] != 0; },
                               used, phi);
  if (stuck != kUnmapped) fail("remaining_components", stuck);

  for (Vertex u = 0; u < t.vertex_count(); ++u) rep.placed_in_a += a_mask[phi[u]];
  if (rep.placed_in_a > a_set.size())
    throw std::logic_error("embed_via_path: more vertices placed in A than it has");
  return certified(g, t, std::move(phi), "via_path");
}

}  // namespace treebed
