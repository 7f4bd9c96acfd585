#include "treebed/decomposition.hpp"

#include <algorithm>
#include <deque>

namespace treebed {
namespace {

VertexSet lift(const std::vector<Vertex>& to_parent, const VertexSet& local, int universe) {
  std::vector<Vertex> out;
  for (Vertex v : local) out.push_back(to_parent[v]);
  std::sort(out.begin(), out.end());
  return VertexSet(universe, std::move(out));
}

CutWitness lift(const std::vector<Vertex>& to_parent, CutWitness w, int universe) {
  w.side_a = lift(to_parent, w.side_a, universe);
  w.side_b = lift(to_parent, w.side_b, universe);
  return w;
}

// owner[v] = index of the component containing v, or -1
std::vector<int> owners(int n, const std::vector<VertexSet>& comps) {
  std::vector<int> owner(n, -1);
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
    if (comps[i].universe() != n)
      throw PreconditionViolated("component " + std::to_string(i) + " has the wrong universe");
    for (Vertex v : comps[i]) {
      if (owner[v] != -1)
        throw OverlappingComponents("components " + std::to_string(owner[v]) + " and " +
                                    std::to_string(i) + " share vertex " + std::to_string(v));
      owner[v] = i;
    }
  }
  return owner;
}

// counts[v][i] = |N(v) cap C_i|
std::vector<std::vector<int>> neighbour_counts(const Graph& g, const std::vector<int>& owner,
                                               int m) {
  std::vector<std::vector<int>> counts(g.vertex_count(), std::vector<int>(m, 0));
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (Vertex w : g.neighbours(v))
      if (owner[w] >= 0) ++counts[v][owner[w]];
  return counts;
}

Graph without_vertices(const Graph& g, const std::vector<char>& alive) {
  std::vector<Edge> kept;
  for (const auto& [u, v] : g.edges())
    if (alive[u] && alive[v]) kept.emplace_back(u, v);
  return Graph(g.vertex_count(), kept);
}

}  // namespace

Verdict RichReport::rich() const {
  const bool cover_failed = !cover_ok && !cover_budget_exhausted;
  if (!min_degree_ok || cover_failed || cut_dense == Verdict::no || !size_ok) return Verdict::no;
  if (cover_ok && cut_dense == Verdict::yes) return Verdict::yes;
  return Verdict::inconclusive;
}

RichReport is_rich(const Graph& g, const VertexSet& h, const RichParams& p, CutMode mode,
                   const CutOptions& cut) {
  if (h.empty()) throw PreconditionViolated("is_rich: empty vertex set");
  if (p.c < 0 || p.rho < 0 || p.k < 1) throw PreconditionViolated("is_rich: bad parameters");
  const int n = g.vertex_count();
  auto sub = induced_subgraph(g, h);
  RichReport r;
  r.cut_mode = mode;
  r.min_degree = sub.graph.min_degree();
  r.min_degree_ok = at_least(r.min_degree, p.c * p.k);
  try {
    auto cover = vertex_cover_at_most(sub.graph, 3 * p.k);
    r.cover_ok = cover.has_value();
    if (cover) r.cover = lift(sub.to_parent, *cover, n);
  } catch (const SearchBudgetExceeded&) {
    r.cover_budget_exhausted = true;
  }
  if (h.size() < 2) {
    r.cut_dense = Verdict::yes;
  } else {
    auto cd = is_cut_dense(sub.graph, p.rho, mode, cut);
    r.cut_dense = cd.verdict;
    if (cd.witness) r.cut_witness = lift(sub.to_parent, *cd.witness, n);
  }
  r.size_ok = h.size() < 100LL * p.k;
  return r;
}

Rational refine_rho_preset(const Rational& delta) { return delta * delta / 20000; }
Rational rich_rho_preset(const Rational& delta) { return delta * delta / 10'000'000'000LL; }
Rational rich_rho_preset_small(const Rational& delta) {
  return delta * delta / 1'000'000'000'000LL;
}

RefineResult refine_cut_dense(const Graph& g, const RefineParams& p, CutMode mode,
                              const CutOptions& cut) {
  const int n = g.vertex_count();
  if (n == 0) throw PreconditionViolated("refine_cut_dense: empty graph");
  if (p.k < 1 || p.eps <= 0 || p.delta <= 0)
    throw PreconditionViolated("refine_cut_dense: needs k >= 1, eps > 0, delta > 0");
  if (!at_least(g.min_degree(), (p.a + p.eps) * p.k))
    throw PreconditionViolated("refine_cut_dense: minimum degree below (a + eps) k");
  if (n > 100LL * p.k) throw PreconditionViolated("refine_cut_dense: more than 100k vertices");
  RefineResult out;
  if (p.delta * 400 >= p.eps) {
    if (!p.relax) throw PreconditionViolated("refine_cut_dense: delta must be below eps/400");
    out.relaxed_preconditions = true;
  }
  out.rho = p.rho ? *p.rho : refine_rho_preset(p.delta);

  std::vector<char> alive(n, 1);
  Graph cur = g;
  for (int i = 1;; ) {
    std::optional<CutWitness> violating;
    VertexSet where;
    for (const auto& comp : connected_components(cur, VertexSet::from_mask(alive))) {
      if (comp.size() < 2) continue;
      auto sub = induced_subgraph(cur, comp);
      if (mode == CutMode::exact) {
        auto w = cut_density(sub.graph, CutMode::exact, cut);
        if (w.density < out.rho) violating = lift(sub.to_parent, w, n);
      } else {
        auto cd = is_cut_dense(sub.graph, out.rho, CutMode::heuristic, cut);
        if (cd.verdict == Verdict::no) violating = lift(sub.to_parent, *cd.witness, n);
      }
      if (violating) {
        where = comp;
        break;
      }
    }
    if (!violating) break;

    RefineStep step;
    step.iteration = i;
    step.component = where;
    step.side_a = violating->side_a;
    step.side_b = violating->side_b;
    step.crossing = violating->crossing;
    step.density = violating->density;
    auto in_a = violating->side_a.mask();
    std::vector<Edge> crossing;
    for (Vertex u : violating->side_a)
      for (Vertex w : cur.neighbours(u))
        if (!in_a[w] && where.contains(w)) crossing.emplace_back(u, w);
    cur = remove_edges(cur, crossing);
    step.threshold = (p.a + p.eps - Rational(2 * i - 1) * p.delta) * p.k;
    std::vector<Vertex> doomed;
    for (Vertex v : where)
      if (Rational(cur.degree(v)) < step.threshold) doomed.push_back(v);
    for (Vertex v : doomed) alive[v] = 0;
    cur = without_vertices(cur, alive);
    step.removed = VertexSet(n, doomed);
    step.min_degree_after = min_degree_within(cur, VertexSet::from_mask(alive));
    out.deleted_vertices += static_cast<int>(doomed.size());
    out.log.push_back(std::move(step));
    ++i;
  }

  out.kept = VertexSet::from_mask(alive);
  out.h = cur;
  out.components = connected_components(cur, out.kept);
  out.min_degree = out.kept.empty() ? 0 : min_degree_within(cur, out.kept);
  out.components_certified = mode == CutMode::exact;
  out.deletion_bound_ok = Rational(out.deleted_vertices) <= p.delta * 200 * n;
  out.degree_bound_ok =
      out.kept.empty() || at_least(out.min_degree, (p.a + p.eps - p.delta * 400) * p.k);
  if (!p.relax && !(out.deletion_bound_ok && out.degree_bound_ok))
    throw PostconditionViolated("refine_cut_dense: deletion or degree bound failed");
  return out;
}

CollectionReport classify_components(const Graph& g, const std::vector<VertexSet>& comps, int s,
                                     int t) {
  const int n = g.vertex_count();
  const int m = static_cast<int>(comps.size());
  auto owner = owners(n, comps);
  auto counts = neighbour_counts(g, owner, m);
  CollectionReport r;
  r.components = comps;
  r.affinity.resize(n);
  std::vector<Vertex> split;
  for (Vertex v = 0; v < n; ++v) {
    auto& a = r.affinity[v];
    for (int i = 0; i < m; ++i) {
      if (a.first == -1 || counts[v][i] > counts[v][a.first]) {
        a.second = a.first;
        a.first = i;
      } else if (a.second == -1 || counts[v][i] > counts[v][a.second]) {
        a.second = i;
      }
    }
    a.residual = g.degree(v);
    if (a.first >= 0) a.residual -= counts[v][a.first];
    if (a.second >= 0) a.residual -= counts[v][a.second];
    int reach = 0;
    for (int i = 0; i < m; ++i) reach += counts[v][i] >= s;
    if (reach >= 2) split.push_back(v);
  }
  r.split = VertexSet(n, split);
  for (int i = 0; i < m; ++i) {
    int outer = 0;
    for (Vertex v = 0; v < n; ++v)
      if (owner[v] != i && counts[v][i] >= t) ++outer;
    r.outer_periphery.push_back(outer);
    r.closed.push_back(outer < t);
  }
  return r;
}

IntersectionReport intersection_property_report(const Graph& g, const std::vector<VertexSet>& comps,
                                                int tree_max_degree, const Rational& eps, int k,
                                                const IntersectionOptions& opts) {
  const int n = g.vertex_count();
  const int m = static_cast<int>(comps.size());
  const int delta = tree_max_degree;
  if (delta < 1 || k < 1 || eps <= 0) throw PreconditionViolated("intersection report: bad parameters");
  auto owner = owners(n, comps);
  if (opts.check_rich) {
    RichParams p{Rational(1, 2) + eps, Rational(0), k};
    for (int i = 0; i < m; ++i)
      if (is_rich(g, comps[i], p, opts.mode).rich() != Verdict::yes)
        throw PreconditionViolated("component " + std::to_string(i) +
                                   " is not (1/2 + eps, 0, k)-rich");
  }
  auto counts = neighbour_counts(g, owner, m);
  IntersectionReport r;

  for (Vertex v = 0; v < n && r.l1.holds; ++v) {
    std::vector<int> heavy;
    for (int i = 0; i < m; ++i)
      if (counts[v][i] >= delta) heavy.push_back(i);
    if (heavy.size() < 2) continue;
    for (int l = 0; l < m; ++l) {
      if (l == heavy[0] || l == heavy[1] || counts[v][l] < 1) continue;
      r.l1 = {false, {v}, {heavy[0], heavy[1], l}};
      break;
    }
  }

  if (m >= 2 * delta) {
    std::vector<std::vector<char>> touches(m, std::vector<char>(n, 0));
    for (int i = 0; i < m; ++i) {
      auto core = periphery(g, comps[i], 2 * delta);
      for (Vertex u : core)
        for (Vertex w : g.neighbours(u)) touches[i][w] = 1;
    }
    for (Vertex v = 0; v < n; ++v) {
      std::vector<int> idx;
      for (int i = 0; i < m; ++i)
        if (touches[i][v]) idx.push_back(i);
      if (static_cast<int>(idx.size()) >= 2 * delta) {
        idx.resize(2 * delta);
        r.l2 = {false, {v}, idx};
        break;
      }
    }
  }

  const Rational bound = eps * k;
  for (int i = 0; i < m && r.l3.holds; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto common = set_intersection(periphery(g, comps[i], bound), periphery(g, comps[j], bound));
      if (!(Rational(common.size()) < bound)) {
        r.l3 = {false, std::vector<Vertex>(common.begin(), common.end()), {i, j}};
        break;
      }
    }
  return r;
}

EmbedOutcome embed_from_l1_witness(const Graph& g, const std::vector<VertexSet>& comps,
                                   const PropertyWitness& l1, const Tree& t) {
  if (l1.holds || l1.vertices.empty() || l1.components.size() != 3)
    throw PreconditionViolated("embed_from_l1_witness: not an L1 witness");
  const auto& c = l1.components;
  return apex_three_split_embed(g, l1.vertices[0], comps.at(c[0]), comps.at(c[1]), comps.at(c[2]),
                                t);
}

ExternalInternal external_internal_classify(const Graph& g, Vertex x,
                                            const std::vector<VertexSet>& comps,
                                            const Rational& eta_k) {
  const int n = g.vertex_count();
  if (x < 0 || x >= n) throw PreconditionViolated("external_internal_classify: bad vertex");
  const int m = static_cast<int>(comps.size());
  auto owner = owners(n, comps);
  std::vector<Vertex> ext, in;
  std::vector<int> count(m);
  for (Vertex z : second_neighbourhood(g, x)) {
    std::fill(count.begin(), count.end(), 0);
    for (Vertex w : g.neighbours(z))
      if (owner[w] >= 0) ++count[owner[w]];
    bool external = false;
    for (int j = 2; j < m && !external; ++j) external = at_least(count[j], eta_k);
    (external ? ext : in).push_back(z);
  }
  return {VertexSet(n, ext), VertexSet(n, in)};
}

PeripheralMatching x_peripheral_matching(const Graph& g, Vertex x,
                                         const std::vector<VertexSet>& comps,
                                         const Rational& eta_k) {
  const int n = g.vertex_count();
  auto split = external_internal_classify(g, x, comps, eta_k);
  PeripheralMatching out;
  if (split.external.empty() || comps.size() <= 2) return out;
  const int m = static_cast<int>(comps.size());
  auto owner = owners(n, comps);

  // stage 1: external vertices to distinct component indices j >= 2
  std::vector<Vertex> ext(split.external.begin(), split.external.end());
  const int e = static_cast<int>(ext.size());
  std::vector<Edge> aux_edges;
  for (int i = 0; i < e; ++i) {
    std::vector<int> count(m, 0);
    for (Vertex w : g.neighbours(ext[i]))
      if (owner[w] >= 0) ++count[owner[w]];
    for (int j = 2; j < m; ++j)
      if (at_least(count[j], eta_k)) aux_edges.emplace_back(i, e + j - 2);
  }
  Graph aux(e + m - 2, aux_edges);
  std::vector<Vertex> index_side(m - 2);
  for (int j = 0; j < m - 2; ++j) index_side[j] = e + j;
  std::vector<Vertex> ext_side(e);
  for (int i = 0; i < e; ++i) ext_side[i] = i;
  auto first = bipartite_matching_lower(aux, VertexSet(e + m - 2, index_side),
                                        VertexSet(e + m - 2, ext_side));
  std::vector<int> component_of(n, -1);
  std::vector<Vertex> survivors;
  for (const auto& [j, i] : first.pairs) {
    component_of[ext[i]] = j - e + 2;
    survivors.push_back(ext[i]);
  }
  std::sort(survivors.begin(), survivors.end());

  // stage 2: surviving external vertices to neighbours of x
  VertexSet w_set(n, survivors);
  auto nbrs = g.neighbours(x);
  auto nx = set_difference(VertexSet(n, std::vector<Vertex>(nbrs.begin(), nbrs.end())), w_set);
  auto in_nx = nx.mask();
  std::vector<Vertex> reachable;
  for (Vertex w : survivors) {
    bool any = false;
    for (Vertex u : g.neighbours(w)) any = any || in_nx[u];
    if (any) reachable.push_back(w);
  }
  if (reachable.empty()) return out;
  out.edges = bipartite_matching_lower(g, nx, VertexSet(n, reachable));

  std::vector<char> seen(m, 0);
  for (const auto& [u, w] : out.edges.pairs) {
    const int j = component_of[w];
    if (!g.adjacent(u, w) || !g.adjacent(x, u) || seen[j] ||
        !at_least(count_neighbours_in(g, w, comps[j]), eta_k))
      throw PostconditionViolated("x_peripheral_matching: matched pair fails its definition");
    seen[j] = 1;
    out.injection.push_back(j);
  }
  return out;
}

DecomposeResult rich_decompose(const Graph& g, const RichParams& p, CutMode mode,
                               const CutOptions& cut) {
  const int n = g.vertex_count();
  const Rational floor_degree = p.c * p.k;
  DecomposeResult out;
  std::deque<VertexSet> work;
  for (auto& c : connected_components(g)) work.push_back(std::move(c));
  std::vector<char> covered(n, 0);

  while (!work.empty()) {
    VertexSet piece = std::move(work.front());
    work.pop_front();
    // peel low-degree vertices inside the piece
    auto mask = piece.mask();
    for (bool changed = true; changed;) {
      changed = false;
      for (Vertex v : piece) {
        if (!mask[v]) continue;
        int d = 0;
        for (Vertex w : g.neighbours(v)) d += mask[w];
        if (Rational(d) < floor_degree) {
          mask[v] = 0;
          changed = true;
        }
      }
    }
    auto peeled = VertexSet::from_mask(mask);
    if (peeled.empty()) continue;
    auto sub = induced_subgraph(g, peeled);
    auto parts = connected_components(sub.graph);
    if (parts.size() > 1) {
      for (const auto& part : parts) work.push_back(lift(sub.to_parent, part, n));
      continue;
    }
    if (peeled.size() >= 2) {
      auto cd = is_cut_dense(sub.graph, p.rho, mode, cut);
      if (cd.verdict == Verdict::no) {
        work.push_back(lift(sub.to_parent, cd.witness->side_a, n));
        work.push_back(lift(sub.to_parent, cd.witness->side_b, n));
        continue;
      }
    }
    if (is_rich(g, peeled, p, mode, cut).rich() == Verdict::yes) {
      for (Vertex v : peeled) covered[v] = 1;
      out.parts.push_back(std::move(peeled));
    }
  }
  std::sort(out.parts.begin(), out.parts.end(), [](const VertexSet& a, const VertexSet& b) {
    return *a.begin() < *b.begin();
  });
  std::vector<char> missing(n);
  int count = 0;
  for (Vertex v = 0; v < n; ++v) {
    missing[v] = !covered[v];
    count += covered[v];
  }
  out.uncovered = VertexSet::from_mask(missing);
  out.coverage = n == 0 ? Rational(1) : Rational(count, n);
  return out;
}

}  // namespace treebed
