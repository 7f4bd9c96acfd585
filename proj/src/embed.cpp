#include "treebed/embed.hpp"

#include "embed_detail.hpp"

#include <algorithm>

namespace treebed {

using detail::certified;
using detail::greedy_extend;
using detail::neighbours_in;
using detail::require;

bool Embedding::is_total() const {
  return std::none_of(map.begin(), map.end(), [](Vertex v) { return v == kUnmapped; });
}

const char* to_string(EmbedStatus s) {
  switch (s) {
    case EmbedStatus::found: return "found";
    case EmbedStatus::not_found: return "not_found";
    case EmbedStatus::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

Validation validate_partial(const Graph& g, const Tree& t, const Embedding& e) {
  if (static_cast<int>(e.map.size()) != t.vertex_count())
    return {false, "map has " + std::to_string(e.map.size()) + " entries for " +
                       std::to_string(t.vertex_count()) + " tree vertices"};
  std::vector<Vertex> owner(g.vertex_count(), kUnmapped);
  for (Vertex u = 0; u < t.vertex_count(); ++u) {
    Vertex h = e.map[u];
    if (h == kUnmapped) continue;
    if (h < 0 || h >= g.vertex_count())
      return {false, "tree vertex " + std::to_string(u) + " maps outside the host"};
    if (owner[h] != kUnmapped)
      return {false, "tree vertices " + std::to_string(owner[h]) + " and " + std::to_string(u) +
                         " share host vertex " + std::to_string(h)};
    owner[h] = u;
  }
  for (auto [u, v] : t.edges()) {
    if (e.map[u] == kUnmapped || e.map[v] == kUnmapped) continue;
    if (!g.adjacent(e.map[u], e.map[v]))
      return {false, "tree edge " + std::to_string(u) + "-" + std::to_string(v) +
                         " lands on non-edge " + std::to_string(e.map[u]) + "-" +
                         std::to_string(e.map[v])};
  }
  return {};
}

Validation validate(const Graph& g, const Tree& t, const Embedding& e) {
  auto partial = validate_partial(g, t, e);
  if (!partial.ok) return partial;
  for (Vertex u = 0; u < t.vertex_count(); ++u)
    if (e.map[u] == kUnmapped) return {false, "tree vertex " + std::to_string(u) + " unmapped"};
  return {};
}

namespace {

void check_vertex(const Graph& g, Vertex v, const char* name) {
  require(v >= 0 && v < g.vertex_count(), std::string(name) + " is not a host vertex");
}

bool disjoint(const VertexSet& a, const VertexSet& b) { return set_intersection(a, b).empty(); }

// Map pivot -> x, then grow each forest inside its own class from x.
EmbedOutcome embed_from_apex(const Graph& g, Vertex x, const Tree& t, Vertex pivot,
                             const std::vector<std::pair<std::vector<Vertex>, VertexSet>>& parts,
                             const std::string& method) {
  auto rv = RootedView::build(t, pivot);
  std::vector<Vertex> phi(t.vertex_count(), kUnmapped);
  std::vector<char> used(g.vertex_count(), 0);
  phi[pivot] = x;
  used[x] = 1;
  for (const auto& [starts, host_class] : parts) {
    auto mask = host_class.mask();
    Vertex stuck = greedy_extend(g, rv, starts, [&](Vertex, Vertex h) { return mask[h] != 0; },
                                 used, phi);
    if (stuck != kUnmapped)
      throw std::logic_error(method + ": greedy step failed at tree vertex " +
                             std::to_string(stuck) + " although the preconditions hold");
  }
  return certified(g, t, std::move(phi), method);
}

std::vector<Vertex> starts_in(const Tree& t, Vertex pivot, const VertexSet& forest) {
  std::vector<Vertex> out;
  for (Vertex w : t.neighbours(pivot))
    if (forest.contains(w)) out.push_back(w);
  return out;
}

EmbedOutcome single_vertex(const Graph& g, const Tree& t, Vertex x, const std::string& method) {
  return certified(g, t, {x}, method);
}

}  // namespace

EmbedOutcome greedy_embed(const Graph& g, const Tree& t, Vertex x) {
  check_vertex(g, x, "x");
  const Vertex r = t.root().value_or(0);
  const int k = t.edge_count();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v == x) continue;
    int d = g.degree(v) - (g.adjacent(v, x) ? 1 : 0);
    require(d >= k, "greedy_embed: vertex " + std::to_string(v) + " has degree " +
                        std::to_string(d) + " in g - x, below k = " + std::to_string(k));
  }
  require(g.degree(x) >= t.max_degree(), "greedy_embed: d(x) below the tree's maximum degree");
  if (t.vertex_count() == 1) return single_vertex(g, t, x, "greedy");
  auto rv = RootedView::build(t, r);
  std::vector<Vertex> phi(t.vertex_count(), kUnmapped);
  std::vector<char> used(g.vertex_count(), 0);
  phi[r] = x;
  used[x] = 1;
  Vertex stuck = greedy_extend(g, rv, rv.children[r], [](Vertex, Vertex) { return true; }, used, phi);
  if (stuck != kUnmapped)
    throw std::logic_error("greedy_embed failed although its preconditions hold");
  return certified(g, t, std::move(phi), "greedy");
}

EmbedOutcome apex_split_embed(const Graph& g, Vertex x, const VertexSet& c1,
                              const VertexSet& c2, const Tree& t) {
  check_vertex(g, x, "x");
  require(disjoint(c1, c2), "apex_split_embed: c1 and c2 overlap");
  require(!c1.contains(x) && !c2.contains(x), "apex_split_embed: x lies in a class");
  const int k = t.edge_count();
  const int delta = t.max_degree();
  for (const auto* c : {&c1, &c2}) {
    require(min_degree_within(g, *c) >= (2 * k) / 3 - 1,
            "apex_split_embed: class minimum degree below floor(2k/3) - 1");
    require(count_neighbours_in(g, x, *c) >= delta,
            "apex_split_embed: x has fewer than maxdeg(T) neighbours in a class");
  }
  if (t.vertex_count() == 1) return single_vertex(g, t, x, "apex_split");
  if (t.vertex_count() == 2) {
    // a single edge has no two-forest split; hang it from a neighbour of x in c1
    std::vector<Vertex> phi(2, kUnmapped);
    const Vertex r = t.root().value_or(0);
    phi[r] = x;
    for (Vertex h : g.neighbours(x))
      if (c1.contains(h)) {
        phi[1 - r] = h;
        break;
      }
    return certified(g, t, std::move(phi), "apex_split");
  }
  auto s = split_two_forests(t);
  return embed_from_apex(g, x, t, s.pivot,
                         {{starts_in(t, s.pivot, s.f1), c1}, {starts_in(t, s.pivot, s.f2), c2}},
                         "apex_split");
}

EmbedOutcome apex_three_split_embed(const Graph& g, Vertex x, const VertexSet& c1,
                                    const VertexSet& c2, const VertexSet& c3, const Tree& t) {
  check_vertex(g, x, "x");
  require(disjoint(c1, c2) && disjoint(c1, c3) && disjoint(c2, c3),
          "apex_three_split_embed: classes overlap");
  require(!c1.contains(x) && !c2.contains(x) && !c3.contains(x),
          "apex_three_split_embed: x lies in a class");
  const int k = t.edge_count();
  const int delta = t.max_degree();
  require(count_neighbours_in(g, x, c1) >= delta && count_neighbours_in(g, x, c2) >= delta,
          "apex_three_split_embed: x needs maxdeg(T) neighbours in c1 and c2");
  require(count_neighbours_in(g, x, c3) >= 1, "apex_three_split_embed: x has no neighbour in c3");
  for (const auto* c : {&c1, &c2, &c3})
    require(min_degree_within(g, *c) >= (k + 1) / 2 + 2,
            "apex_three_split_embed: class minimum degree below ceil(k/2) + 2");
  if (t.vertex_count() == 1) return single_vertex(g, t, x, "apex_three_split");

  auto s = split_three_forests(t);
  auto rv = RootedView::build(t, s.pivot);
  std::vector<Vertex> phi(t.vertex_count(), kUnmapped);
  std::vector<char> used(g.vertex_count(), 0);
  phi[s.pivot] = x;
  used[x] = 1;
  auto grow = [&](const std::vector<Vertex>& starts, const VertexSet& c) {
    auto mask = c.mask();
    Vertex stuck = greedy_extend(g, rv, starts, [&](Vertex, Vertex h) { return mask[h] != 0; },
                                 used, phi);
    if (stuck != kUnmapped)
      throw std::logic_error("apex_three_split_embed: greedy step failed under its preconditions");
  };
  grow(starts_in(t, s.pivot, s.f1), c1);
  grow(starts_in(t, s.pivot, s.f2), c2);
  auto f3_starts = starts_in(t, s.pivot, s.f3);
  if (!f3_starts.empty()) {
    // F3 is a single tree; its root enters c3 through a neighbour y of x
    Vertex u = f3_starts.front();
    Vertex y = kUnmapped;
    for (Vertex h : g.neighbours(x))
      if (c3.contains(h)) {
        y = h;
        break;
      }
    phi[u] = y;
    used[y] = 1;
    grow(rv.children[u], c3);
  }
  return certified(g, t, std::move(phi), "apex_three_split");
}

EmbedOutcome bipartite_apex_embed(const Graph& g, Vertex x, const VertexSet& y1,
                                  const VertexSet& y2, const Tree& t) {
  check_vertex(g, x, "x");
  const int n = g.vertex_count();
  require(disjoint(y1, y2) && !y1.contains(x) && !y2.contains(x) &&
              y1.size() + y2.size() == n - 1,
          "bipartite_apex_embed: y1, y2 must partition the vertices other than x");
  auto m1 = y1.mask(), m2 = y2.mask();
  for (auto [u, v] : g.edges()) {
    if (u == x || v == x) continue;
    require(m1[u] != m1[v], "bipartite_apex_embed: g - x is not bipartite with parts (y1, y2)");
  }
  const std::int64_t k = t.edge_count();
  const std::int64_t delta = std::max(1, t.max_degree());
  std::int64_t min_deg = -1;
  for (Vertex v = 0; v < n; ++v) {
    if (v == x) continue;
    std::int64_t d = g.degree(v) - (g.adjacent(v, x) ? 1 : 0);
    if (min_deg < 0 || d < min_deg) min_deg = d;
  }
  require(6 * delta * min_deg >= (4 * delta - 1) * k,
          "bipartite_apex_embed: minimum degree of g - x below (2/3 - 1/(6 maxdeg)) k");
  require(neighbours_in(g, x, m1) >= delta && neighbours_in(g, x, m2) >= delta,
          "bipartite_apex_embed: x needs maxdeg(T) neighbours on both sides");
  require(k > 6 * delta, "bipartite_apex_embed: needs k > 6 maxdeg(T)");

  auto split = even_odd_split(t);
  const Vertex r = split.root;
  auto rv = RootedView::build(t, r);
  std::vector<int> comp_of(t.vertex_count(), -1);
  for (std::size_t i = 0; i < split.components.size(); ++i)
    for (Vertex w : split.components[i]) comp_of[w] = static_cast<int>(i);
  std::vector<int> class_of(split.components.size(), 0);
  for (int i : split.class1) class_of[i] = 1;
  for (int i : split.class2) class_of[i] = 2;

  std::vector<Vertex> phi(t.vertex_count(), kUnmapped);
  std::vector<char> used(n, 0);
  phi[r] = x;
  used[x] = 1;
  auto side_ok = [&](Vertex u, Vertex h) {
    int j = class_of[comp_of[u]];
    bool odd = rv.depth[u] % 2 == 1;
    int side = odd ? j : 3 - j;
    return side == 1 ? m1[h] != 0 : m2[h] != 0;
  };
  Vertex stuck = greedy_extend(g, rv, rv.children[r], side_ok, used, phi);
  if (stuck != kUnmapped)
    throw PostconditionViolated("bipartite_apex_embed: placement failed at tree vertex " +
                                std::to_string(stuck) + " under its preconditions");
  return certified(g, t, std::move(phi), "bipartite_apex");
}

EmbedOutcome matching_forest_embed(const Graph& g, const VertexSet& host_core,
                                   const std::vector<Portal>& portals, const Tree& t,
                                   const MatchingForestOptions& opts) {
  const int n = g.vertex_count();
  const int k = t.edge_count();
  const int half = (k + 1) / 2;
  require(t.vertex_count() >= 2, "matching_forest_embed: tree needs an edge");
  auto msf = msf_decomposition(t);
  require(portals.size() >= msf.matching.size(),
          "matching_forest_embed: fewer portals than matching edges");
  require(min_degree_within(g, host_core) >= half + opts.reserve,
          "matching_forest_embed: core minimum degree below ceil(k/2) + reserve");
  for (std::size_t i = 0; i < portals.size(); ++i) {
    const auto& p = portals[i];
    require(p.core_end >= 0 && p.core_end < n && p.far_end >= 0 && p.far_end < n &&
                g.adjacent(p.core_end, p.far_end),
            "matching_forest_embed: portal is not a host edge");
    require(host_core.contains(p.core_end) && p.component.contains(p.far_end),
            "matching_forest_embed: portal endpoints on the wrong sides");
    require(disjoint(p.component, host_core),
            "matching_forest_embed: external component meets the core");
    require(min_degree_within(g, p.component) >= half,
            "matching_forest_embed: external component minimum degree below ceil(k/2)");
    for (std::size_t j = 0; j < i; ++j)
      require(portals[j].component == p.component || disjoint(portals[j].component, p.component),
              "matching_forest_embed: external components overlap");
  }

  auto s_tree = induced_tree(t, msf.s_tree);
  auto rv = RootedView::build(t, msf.root);
  const int m = static_cast<int>(msf.matching.size());
  std::vector<int> choice(m, -1);
  std::vector<char> portal_used(portals.size(), 0);
  std::int64_t nodes = 0;
  bool budget_hit = false;
  std::optional<std::vector<Vertex>> result;

  auto attempt = [&]() -> bool {
    OracleOptions o;
    o.allowed = host_core;
    o.budget = opts.budget - nodes;
    Embedding pins(s_tree.tree.vertex_count());
    for (int i = 0; i < m; ++i)
      pins.map[s_tree.from_parent[msf.matching[i].first]] = portals[choice[i]].core_end;
    o.pins = pins;
    auto s_out = brute_force_embed(g, s_tree.tree, o);
    nodes += s_out.nodes_explored;
    if (s_out.status == EmbedStatus::budget_exhausted) {
      budget_hit = true;
      return false;
    }
    if (s_out.status != EmbedStatus::found) return false;
    std::vector<Vertex> phi(t.vertex_count(), kUnmapped);
    std::vector<char> used(n, 0);
    for (Vertex u = 0; u < s_tree.tree.vertex_count(); ++u) {
      phi[s_tree.to_parent[u]] = s_out.embedding->map[u];
      used[s_out.embedding->map[u]] = 1;
    }
    for (int i = 0; i < m; ++i) {
      const auto& p = portals[choice[i]];
      Vertex f = msf.matching[i].second;
      if (used[p.far_end]) return false;
      phi[f] = p.far_end;
      used[p.far_end] = 1;
      auto mask = p.component.mask();
      Vertex stuck = greedy_extend(g, rv, rv.children[f],
                                   [&](Vertex, Vertex h) { return mask[h] != 0; }, used, phi);
      if (stuck != kUnmapped) return false;
    }
    result = std::move(phi);
    return true;
  };
  auto assign = [&](auto&& self, int i) -> bool {
    if (budget_hit) return false;
    if (i == m) return attempt();
    for (std::size_t p = 0; p < portals.size(); ++p) {
      if (portal_used[p]) continue;
      bool clash = false;
      for (int j = 0; j < i; ++j)
        clash = clash || portals[choice[j]].core_end == portals[p].core_end ||
                portals[choice[j]].component == portals[p].component;
      if (clash) continue;
      portal_used[p] = 1;
      choice[i] = static_cast<int>(p);
      if (self(self, i + 1)) return true;
      portal_used[p] = 0;
    }
    return false;
  };
  if (!assign(assign, 0)) {
    if (budget_hit)
      throw NotFound("s_placement", "placement search exhausted its budget of " +
                                        std::to_string(opts.budget) + " nodes");
    throw NotFound("s_placement", "no portal assignment admits an embedding of S");
  }
  return certified(g, t, std::move(*result), "matching_forest", nodes);
}

}  // namespace treebed
