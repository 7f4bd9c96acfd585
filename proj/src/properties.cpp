#include "treebed/constructions.hpp"
#include "treebed/decomposition.hpp"
#include "treebed/lab.hpp"
#include "treebed/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace treebed {
namespace {

// One check per trial; returns an empty string on success, otherwise a description.
using Check = std::function<std::string(Rng&, int)>;

struct Invariant {
  const char* module;
  const char* name;
  Check check;
};

Tree random_tree(Rng& rng, int max_n, int max_deg) {
  const int n = rng.between(2, max_n);
  return gen_random_tree(n, max_deg, rng.next());
}

Graph random_connected(Rng& rng, int lo, int hi, int min_deg) {
  for (;;) {
    const int n = rng.between(lo, hi);
    auto g = gen_random_graph_min_degree(n, std::min(min_deg, n - 1), rng.next(),
                                         Rational(static_cast<int64_t>(rng.below(4)), 10));
    if (is_connected(g)) return g;
  }
}

std::string fail(const std::string& what, int trial) {
  return "trial " + std::to_string(trial) + ": " + what;
}

// Off-by-one variant of the two-forest split: its cap is floor(2k/3) + 1.
std::pair<int, int> mutant_two_split(const Tree& t) {
  const std::int64_t k = t.edge_count();
  auto comps = components_without(t, balanced_separator_vertex(t));
  std::sort(comps.begin(), comps.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.size() > b.size(); });
  int f1 = 0, f2 = 0;
  for (const auto& c : comps) {
    if (f1 + c.size() <= (2 * k) / 3 + 1) f1 += c.size();
    else f2 += c.size();
  }
  if (f2 > f1) std::swap(f1, f2);
  return {f1, f2};
}

std::vector<Invariant> invariants(Mutation mutation) {
  std::vector<Invariant> out;

  out.push_back({"graph_core", "periphery_monotone", [](Rng& rng, int i) -> std::string {
    auto g = random_connected(rng, 2, 30, 1);
    std::vector<Vertex> s;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (rng.chance(1, 2)) s.push_back(v);
    VertexSet set(g.vertex_count(), s);
    const int d = rng.between(0, 6), d2 = d + rng.between(0, 4);
    auto wide = periphery(g, set, d), narrow = periphery(g, set, d2);
    if (set_difference(narrow, wide).size() != 0) return fail("L_d' not inside L_d", i);
    return {};
  }});

  out.push_back({"graph_core", "bipartite_matching_bound", [](Rng& rng, int i) -> std::string {
    const int nx = rng.between(1, 12), ny = rng.between(1, 12);
    std::vector<Edge> edges;
    for (int y = 0; y < ny; ++y) {
      edges.emplace_back(static_cast<int>(rng.below(nx)), nx + y);
      for (int x = 0; x < nx; ++x)
        if (rng.chance(1, 5)) edges.emplace_back(x, nx + y);
    }
    Graph g(nx + ny, edges);
    std::vector<Vertex> xs(nx), ys(ny);
    std::iota(xs.begin(), xs.end(), 0);
    std::iota(ys.begin(), ys.end(), nx);
    auto m = bipartite_matching_lower(g, VertexSet(nx + ny, xs), VertexSet(nx + ny, ys));
    int d = 0;
    for (int x = 0; x < nx; ++x) d = std::max(d, g.degree(x));
    if (static_cast<std::int64_t>(m.size()) * d < ny) return fail("|M| d < |Y|", i);
    return {};
  }});

  out.push_back({"graph_core", "even_walk_bound", [](Rng& rng, int i) -> std::string {
    const Rational alpha = rng.chance(1, 2) ? Rational(3, 10) : Rational(1, 2);
    const int n = rng.between(4, 30);
    auto g = gen_random_graph_min_degree(n, static_cast<int>(ceil_of(alpha * n)), rng.next());
    const Vertex u = static_cast<int>(rng.below(n));
    Vertex v = static_cast<int>(rng.below(n));
    if (u == v) v = (v + 1) % n;
    auto w = short_even_walk(g, u, v);
    if (!w) return {};
    if (!(Rational(static_cast<std::int64_t>(w->size()) - 1) < 4 / alpha))
      return fail("even walk of length " + std::to_string(w->size() - 1), i);
    return {};
  }});

  out.push_back({"graph_core", "diameter_bound", [](Rng& rng, int i) -> std::string {
    auto g = random_connected(rng, 3, 40, 2);
    if (diameter(g) > diameter_bound(g)) return fail("diameter above 3n/(delta+1) - 1", i);
    return {};
  }});

  out.push_back({"graph_core", "path_in_range_contract", [](Rng& rng, int i) -> std::string {
    auto g = random_connected(rng, 4, 20, 2);
    const int n = g.vertex_count();
    const Vertex y = 0, z = n - 1;
    const int ell = rng.between(0, n / 2), slack = rng.between(1, 4);
    auto r = path_in_range(g, y, z, ell, slack, rng.next());
    if (!r.path) return {};
    const auto& p = *r.path;
    const int len = static_cast<int>(p.size()) - 1;
    std::vector<Vertex> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return fail("path repeats a vertex", i);
    if (p.front() != y || p.back() != z || len < ell + 1 || len > ell + slack)
      return fail("path endpoints or length wrong", i);
    for (std::size_t j = 1; j < p.size(); ++j)
      if (!g.adjacent(p[j - 1], p[j])) return fail("path uses a non-edge", i);
    return {};
  }});

  out.push_back({"tree_toolkit", "separator_bound", [](Rng& rng, int i) -> std::string {
    auto t = random_tree(rng, 200, 5);
    for (const auto& c : components_without(t, balanced_separator_vertex(t)))
      if (2 * c.size() > t.vertex_count()) return fail("separator component above n/2", i);
    return {};
  }});

  out.push_back({"tree_toolkit", "two_forest_bounds", [mutation](Rng& rng, int i) -> std::string {
    // the first tree is a star, the shape most sensitive to the cap
    Tree t = i == 0 ? gen_spider(rng.between(6, 30), 1).with_root(std::nullopt)
                    : random_tree(rng, 200, 5);
    const std::int64_t k = t.edge_count();
    std::int64_t f1, f2;
    if (mutation == Mutation::split_two_forests_bound) {
      std::tie(f1, f2) = mutant_two_split(t);
    } else {
      auto s = split_two_forests(t);
      f1 = s.f1.size();
      f2 = s.f2.size();
    }
    if (2 * f1 < k || f1 > (2 * k) / 3 || f2 > f1 || f1 + f2 != k)
      return fail("two-forest sizes " + std::to_string(f1) + "/" + std::to_string(f2) +
                      " for k=" + std::to_string(k),
                  i);
    return {};
  }});

  out.push_back({"tree_toolkit", "three_forest_bounds", [](Rng& rng, int i) -> std::string {
    auto t = random_tree(rng, 200, 5);
    auto s = split_three_forests(t);
    const std::int64_t cap = (t.edge_count() + 1) / 2;
    if (s.f1.size() > cap || s.f2.size() > cap || s.f3.size() > cap || s.f3_components.size() > 1)
      return fail("three-forest bounds", i);
    return {};
  }});

  out.push_back({"tree_toolkit", "chain_split_bounds", [](Rng& rng, int i) -> std::string {
    auto t = random_tree(rng, 200, 5);
    const int n = t.vertex_count();
    const int m = rng.between(1, n);
    auto c = chain_split(t, m);
    if (c.s0.size() != m) return fail("|S0| != m", i);
    if (std::pow(1.5, static_cast<double>(c.others.size())) > n + 1e-9)
      return fail("more pieces than log_{3/2} n", i);
    for (const auto& piece : c.others) {
      int shared = 0;
      for (Vertex v : piece.vertices) shared += c.s0.contains(v);
      if (shared != 1) return fail("piece meets S0 in " + std::to_string(shared) + " vertices", i);
    }
    return {};
  }});

  out.push_back({"tree_toolkit", "even_odd_bound", [](Rng& rng, int i) -> std::string {
    auto t = random_tree(rng, 200, 5);
    auto s = even_odd_split(t);
    const Rational bound = even_odd_bound(t);
    if (s.lhs1 > bound || s.lhs2 > bound) return fail("even/odd bound exceeded", i);
    return {};
  }});

  out.push_back({"tree_toolkit", "bipartition_class_bound", [](Rng& rng, int i) -> std::string {
    auto t = random_tree(rng, 200, 5);
    auto [a, b] = bipartition_classes(t);
    const std::int64_t k = t.edge_count(), d = t.max_degree();
    if (a.size() * d < k || b.size() * d < k) return fail("class below k/maxdeg", i);
    return {};
  }});

  out.push_back({"tree_toolkit", "msf_edge_partition", [](Rng& rng, int i) -> std::string {
    auto t = random_tree(rng, 200, 4);
    auto d = msf_decomposition(t);
    const std::int64_t half = (t.edge_count() + 1) / 2;
    std::int64_t s_edges = 0, f_edges = 0;
    auto in_s = d.s_tree.mask(), in_f = d.f_forest.mask();
    for (const auto& [u, v] : t.edges()) {
      if (in_s[u] && in_s[v]) ++s_edges;
      else if (in_f[u] && in_f[v]) ++f_edges;
    }
    if (s_edges + f_edges + static_cast<std::int64_t>(d.matching.size()) != t.edge_count())
      return fail("edges of S, F and M do not partition E(T)", i);
    for (const auto& c : d.f_components)
      if (c.size() > half) return fail("F component above ceil(k/2)", i);
    if (d.steiner_size > d.steiner_cap) return fail("Steiner tree above its cap", i);
    return {};
  }});

  out.push_back({"embedder", "greedy_totality", [](Rng& rng, int i) -> std::string {
    const int k = rng.between(1, 8);
    auto t = gen_random_tree(k + 1, 4, rng.next());
    const int n = rng.between(k + 2, k + 12);
    auto g = gen_random_graph_min_degree(n, std::min(k + 1, n - 1), rng.next());
    auto out = greedy_embed(g, t, static_cast<Vertex>(rng.below(n)));
    if (out.status != EmbedStatus::found) return fail("greedy embedding missing", i);
    return {};
  }});

  out.push_back({"embedder", "oracle_soundness", [](Rng& rng, int i) -> std::string {
    auto g = random_connected(rng, 4, 10, 1);
    auto t = gen_random_tree(rng.between(2, g.vertex_count()), 4, rng.next());
    auto o = brute_force_embed(g, t);
    if (o.status == EmbedStatus::found && !validate(g, t, *o.embedding).ok)
      return fail("oracle embedding invalid", i);
    return {};
  }});

  out.push_back({"decomposition", "residual_identity", [](Rng& rng, int i) -> std::string {
    auto g = random_connected(rng, 4, 24, 1);
    const int n = g.vertex_count();
    const int m = rng.between(0, 4);
    std::vector<std::vector<Vertex>> parts(m);
    for (Vertex v = 0; v < n; ++v) {
      const int p = static_cast<int>(rng.below(m + 1));
      if (p < m) parts[p].push_back(v);
    }
    std::vector<VertexSet> comps;
    for (auto& p : parts) comps.emplace_back(n, p);
    auto r = classify_components(g, comps, 2, 2);
    for (Vertex v = 0; v < n; ++v) {
      const auto& a = r.affinity[v];
      int sum = a.residual;
      if (a.first >= 0) sum += count_neighbours_in(g, v, comps[a.first]);
      if (a.second >= 0) sum += count_neighbours_in(g, v, comps[a.second]);
      if (sum != g.degree(v)) return fail("residual identity broken", i);
    }
    return {};
  }});

  out.push_back({"decomposition", "rich_monotone_in_rho", [](Rng& rng, int i) -> std::string {
    auto g = random_connected(rng, 3, 14, 2);
    const VertexSet all = VertexSet::all(g.vertex_count());
    const int k = rng.between(1, 8);
    const Rational c(static_cast<std::int64_t>(rng.below(3)), 4);
    bool was_rich = true;
    for (int step = 0; step <= 8; ++step) {
      RichParams p{c, Rational(step, 8), k};
      const bool rich = is_rich(g, all, p, CutMode::exact).rich() == Verdict::yes;
      if (rich && !was_rich) return fail("rich again after raising rho", i);
      was_rich = rich;
    }
    return {};
  }});

  return out;
}

}  // namespace

std::vector<LedgerEntry> property_suite(std::uint64_t seed, int trials, Mutation mutation) {
  std::vector<LedgerEntry> ledger;
  if (trials <= 0) return ledger;
  auto all = invariants(mutation);
  for (std::size_t id = 0; id < all.size(); ++id) {
    LedgerEntry e;
    e.module = all[id].module;
    e.invariant = all[id].name;
    for (int i = 0; i < trials; ++i) {
      Rng rng(derive_seed(seed, 100 + id, i));
      std::string problem;
      try {
        problem = all[id].check(rng, i);
      } catch (const std::exception& ex) {
        problem = fail(std::string("exception: ") + ex.what(), i);
      }
      ++e.trials;
      if (problem.empty()) {
        ++e.passed;
      } else {
        ++e.failed;
        if (e.first_failure.empty()) e.first_failure = problem;
      }
    }
    ledger.push_back(std::move(e));
  }
  return ledger;
}

}  // namespace treebed
