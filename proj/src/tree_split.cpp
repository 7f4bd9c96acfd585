#include "treebed/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace treebed {
namespace {

void check_partition_input(std::span<const std::int64_t> a, std::int64_t ell) {
  if (ell < 1) throw PreconditionViolated("sum_partition needs ell >= 1");
  std::int64_t total = 0;
  const std::int64_t cap = (ell + 1) / 2;
  for (auto x : a) {
    if (x < 0) throw PreconditionViolated("sum_partition values must be non-negative");
    if (x > cap)
      throw PreconditionViolated("value " + std::to_string(x) + " exceeds ceil(ell/2)");
    total += x;
  }
  if (total > ell) throw PreconditionViolated("values sum beyond ell");
}

std::vector<int> largest_first(std::span<const std::int64_t> a) {
  std::vector<int> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i] > a[j]; });
  return idx;
}

std::int64_t sum_of(std::span<const std::int64_t> a, const std::vector<int>& idx) {
  std::int64_t s = 0;
  for (int i : idx) s += a[i];
  return s;
}

// Subset of `items` whose sum lies in [lo, hi]; nullopt when none exists.
std::optional<std::vector<int>> subset_sum_between(std::span<const std::int64_t> a,
                                                   const std::vector<int>& items,
                                                   std::int64_t lo, std::int64_t hi,
                                                   bool largest = false) {
  if (lo > hi || hi < 0) return std::nullopt;
  std::int64_t total = sum_of(a, items);
  std::vector<int> via(static_cast<std::size_t>(total) + 1, -2);
  via[0] = -1;
  for (int i : items) {
    if (a[i] == 0) continue;
    for (std::int64_t s = total; s >= a[i]; --s)
      if (via[s] == -2 && via[s - a[i]] != -2) via[s] = i;
  }
  const std::int64_t first = std::max<std::int64_t>(lo, 0), last = std::min(hi, total);
  for (std::int64_t i = first; i <= last; ++i) {
    const std::int64_t s = largest ? last - (i - first) : i;
    if (via[s] == -2) continue;
    std::vector<int> chosen;
    for (std::int64_t t = s; t > 0; t -= a[via[t]]) chosen.push_back(via[t]);
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }
  return std::nullopt;
}

std::vector<int> complement(const std::vector<int>& items, const std::vector<int>& chosen) {
  std::vector<int> out;
  for (int i : items)
    if (!std::binary_search(chosen.begin(), chosen.end(), i)) out.push_back(i);
  return out;
}

bool valid_two(std::span<const std::int64_t> a, const TwoPartition& p, std::int64_t ell) {
  auto s1 = sum_of(a, p.j1), s2 = sum_of(a, p.j2);
  return s2 <= s1 && s1 <= (2 * ell) / 3;
}

bool valid_three(std::span<const std::int64_t> a, const ThreePartition& p, std::int64_t ell) {
  auto s1 = sum_of(a, p.i1), s2 = sum_of(a, p.i2), s3 = sum_of(a, p.i3);
  return s3 <= s2 && s2 <= s1 && s1 <= (ell + 1) / 2 && p.i3.size() <= 1;
}

Subtree make_subtree(const Tree& t, std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  Subtree s;
  s.vertices = std::move(vertices);
  for (auto e : t.edges())
    if (s.contains(e.first) && s.contains(e.second)) s.edges.push_back(e);
  return s;
}

}  // namespace

TwoPartition sum_partition_two(std::span<const std::int64_t> a, std::int64_t ell) {
  check_partition_input(a, ell);
  const std::int64_t bound = (2 * ell) / 3;
  TwoPartition p;
  std::int64_t s1 = 0;
  for (int i : largest_first(a)) {
    if (s1 + a[i] <= bound) {
      p.j1.push_back(i);
      s1 += a[i];
    } else {
      p.j2.push_back(i);
    }
  }
  if (sum_of(a, p.j2) > s1) std::swap(p.j1, p.j2);
  std::sort(p.j1.begin(), p.j1.end());
  std::sort(p.j2.begin(), p.j2.end());
  if (valid_two(a, p, ell)) return p;

  std::vector<int> all(a.size());
  std::iota(all.begin(), all.end(), 0);
  const std::int64_t total = sum_of(a, all);
  auto chosen = subset_sum_between(a, all, total - bound, bound);
  if (!chosen) throw PostconditionViolated("no two-way partition within 2ell/3");
  p.j1 = *chosen;
  p.j2 = complement(all, p.j1);
  if (sum_of(a, p.j2) > sum_of(a, p.j1)) std::swap(p.j1, p.j2);
  return p;
}

ThreePartition sum_partition_three(std::span<const std::int64_t> a, std::int64_t ell) {
  check_partition_input(a, ell);
  const std::int64_t cap = (ell + 1) / 2;
  std::vector<int> bins[3];
  std::int64_t sums[3] = {0, 0, 0};
  for (int i : largest_first(a)) {
    int target = 2;
    for (int b = 0; b < 2; ++b)
      if (sums[b] + a[i] <= cap) {
        target = b;
        break;
      }
    bins[target].push_back(i);
    sums[target] += a[i];
  }
  auto finish = [&](std::vector<int> x, std::vector<int> y, std::vector<int> z) {
    // keep the singleton (or empty) bin last, order the other two by sum
    if (sum_of(a, y) > sum_of(a, x)) std::swap(x, y);
    for (auto* v : {&x, &y, &z}) std::sort(v->begin(), v->end());
    return ThreePartition{std::move(x), std::move(y), std::move(z)};
  };
  if (bins[2].size() <= 1) {
    auto p = finish(bins[0], bins[1], bins[2]);
    if (valid_three(a, p, ell)) return p;
  }

  std::vector<int> all(a.size());
  std::iota(all.begin(), all.end(), 0);
  const std::int64_t total = sum_of(a, all);
  if (auto chosen = subset_sum_between(a, all, total - cap, cap)) {
    auto p = finish(*chosen, complement(all, *chosen), {});
    if (valid_three(a, p, ell)) return p;
  }
  for (int i : largest_first(a)) {
    std::vector<int> rest;
    for (int j : all)
      if (j != i) rest.push_back(j);
    const std::int64_t r = total - a[i];
    auto chosen = subset_sum_between(a, rest, std::max(a[i], r - cap), std::min(cap, r - a[i]));
    if (!chosen) continue;
    auto p = finish(*chosen, complement(rest, *chosen), {i});
    if (valid_three(a, p, ell)) return p;
  }
  throw PostconditionViolated("no three-way partition within ceil(ell/2)");
}

TwoForestSplit split_two_forests(const Tree& t) {
  if (t.vertex_count() < 2) throw PreconditionViolated("split_two_forests needs n >= 2");
  const int n = t.vertex_count();
  const std::int64_t k = t.edge_count();
  TwoForestSplit s;
  s.pivot = balanced_separator_vertex(t);
  s.components = components_without(t, s.pivot);
  std::vector<std::int64_t> sizes;
  for (const auto& c : s.components) sizes.push_back(c.size());
  auto p = sum_partition_two(sizes, k);
  s.f1_components = p.j1;
  s.f2_components = p.j2;
  s.f1 = VertexSet::none(n);
  s.f2 = VertexSet::none(n);
  for (int i : p.j1) s.f1 = set_union(s.f1, s.components[i]);
  for (int i : p.j2) s.f2 = set_union(s.f2, s.components[i]);
  if (2 * s.f1.size() < k || s.f1.size() > (2 * k) / 3 || s.f2.size() > s.f1.size() ||
      s.f1.size() + s.f2.size() != k)
    throw PostconditionViolated("two-forest split out of bounds");
  return s;
}

ThreeForestSplit split_three_forests(const Tree& t) {
  if (t.vertex_count() < 2) throw PreconditionViolated("split_three_forests needs n >= 2");
  const int n = t.vertex_count();
  const std::int64_t k = t.edge_count();
  ThreeForestSplit s;
  s.pivot = balanced_separator_vertex(t);
  s.components = components_without(t, s.pivot);
  std::vector<std::int64_t> sizes;
  for (const auto& c : s.components) sizes.push_back(c.size());
  auto p = sum_partition_three(sizes, k);
  s.f1_components = p.i1;
  s.f2_components = p.i2;
  s.f3_components = p.i3;
  s.f1 = s.f2 = s.f3 = VertexSet::none(n);
  for (int i : p.i1) s.f1 = set_union(s.f1, s.components[i]);
  for (int i : p.i2) s.f2 = set_union(s.f2, s.components[i]);
  for (int i : p.i3) s.f3 = set_union(s.f3, s.components[i]);
  const std::int64_t cap = (k + 1) / 2;
  if (s.f1.size() > cap || s.f2.size() > cap || s.f3.size() > cap ||
      s.f1.size() + s.f2.size() + s.f3.size() != k || s.f3_components.size() > 1)
    throw PostconditionViolated("three-forest split out of bounds");
  return s;
}

SubtreeSplit subtree_split(const Tree& t, Vertex v, int m) {
  const int n = t.vertex_count();
  if (v < 0 || v >= n) throw PreconditionViolated("subtree_split vertex out of range");
  if (m < 1 || 3 * m > n) throw PreconditionViolated("subtree_split needs 1 <= m <= n/3");
  auto rv = RootedView::build(t, v);
  Vertex u = v;
  for (bool moved = true; moved;) {
    moved = false;
    for (Vertex c : rv.children[u])
      if (rv.subtree_size[c] >= m) {
        u = c;
        moved = true;
        break;
      }
  }
  std::vector<Vertex> s2{u};
  std::vector<char> in_s2(n, 0);
  in_s2[u] = 1;
  int total = 1;
  for (Vertex c : rv.children[u]) {
    if (total >= m) break;
    for (Vertex w : rv.subtree(c)) {
      s2.push_back(w);
      in_s2[w] = 1;
    }
    total += rv.subtree_size[c];
  }
  std::vector<Vertex> s1;
  for (Vertex w = 0; w < n; ++w)
    if (!in_s2[w] || w == u) s1.push_back(w);
  SubtreeSplit out{make_subtree(t, s1), make_subtree(t, s2), u};
  if (out.s2.size() < m || out.s2.size() > 3 * m || !out.s1.contains(v) ||
      out.s1.edges.size() + out.s2.edges.size() != static_cast<std::size_t>(t.edge_count()))
    throw PostconditionViolated("subtree split out of bounds");
  return out;
}

ChainSplit chain_split(const Tree& t, int m) {
  const int n = t.vertex_count();
  if (m < 1 || m > n) throw PreconditionViolated("chain_split needs 1 <= m <= n");
  std::vector<char> in_r(n, 1);
  int r_size = n;
  std::vector<std::vector<Vertex>> pieces;
  ChainSplit out;

  while (r_size > m) {
    const std::int64_t d_needed = r_size - m;
    const std::int64_t floor_take = (d_needed + 2) / 3;
    Vertex best_u = kUnmapped;
    std::int64_t best_take = -1;
    std::vector<std::vector<Vertex>> best_branches;
    for (Vertex u = 0; u < n; ++u) {
      if (!in_r[u]) continue;
      std::vector<std::vector<Vertex>> branches;
      std::vector<std::int64_t> sizes;
      for (Vertex start : t.neighbours(u)) {
        if (!in_r[start]) continue;
        std::vector<Vertex> comp{start};
        std::vector<Vertex> from{u};
        for (std::size_t i = 0; i < comp.size(); ++i)
          for (Vertex w : t.neighbours(comp[i]))
            if (w != from[i] && in_r[w]) {
              comp.push_back(w);
              from.push_back(comp[i]);
            }
        sizes.push_back(static_cast<std::int64_t>(comp.size()));
        branches.push_back(std::move(comp));
      }
      std::vector<int> idx(sizes.size());
      std::iota(idx.begin(), idx.end(), 0);
      // largest achievable total not exceeding d_needed
      auto chosen = subset_sum_between(sizes, idx, std::max(floor_take, best_take + 1), d_needed,
                                       true);
      if (chosen) {
        best_take = 0;
        for (int i : *chosen) best_take += sizes[i];
        best_u = u;
        best_branches.clear();
        for (int i : *chosen) best_branches.push_back(branches[i]);
      }
      if (best_take == d_needed) break;
    }
    if (best_u == kUnmapped) throw PostconditionViolated("chain_split found no admissible piece");
    std::vector<Vertex> piece{best_u};
    for (auto& b : best_branches)
      for (Vertex w : b) {
        piece.push_back(w);
        in_r[w] = 0;
        --r_size;
      }
    pieces.push_back(std::move(piece));
    ++out.rounds;
  }

  std::vector<Vertex> rest;
  for (Vertex w = 0; w < n; ++w)
    if (in_r[w]) rest.push_back(w);
  out.s0 = make_subtree(t, rest);

  // group shaved pieces into connected subtrees
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<Edge> forest;
  for (const auto& p : pieces) {
    auto sub = make_subtree(t, p);
    for (auto e : sub.edges) {
      forest.push_back(e);
      uf[find(e.first)] = find(e.second);
    }
  }
  std::map<int, std::vector<Vertex>> groups;
  for (auto [a, b] : forest) {
    groups[find(a)].push_back(a);
    groups[find(a)].push_back(b);
  }
  for (auto& [root, verts] : groups) {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto sub = make_subtree(t, verts);
    std::vector<Vertex> shared;
    for (Vertex w : sub.vertices)
      if (out.s0.contains(w)) shared.push_back(w);
    if (shared.size() != 1) throw PostconditionViolated("chain piece does not meet S0 once");
    out.attach_points.push_back(shared.front());
    out.others.push_back(std::move(sub));
  }

  std::size_t edge_total = out.s0.edges.size();
  for (const auto& s : out.others) edge_total += s.edges.size();
  const double ell = static_cast<double>(out.others.size());
  if (out.s0.size() != m || edge_total != static_cast<std::size_t>(t.edge_count()) ||
      (ell > 0 && std::pow(1.5, ell) > static_cast<double>(n) * (1 + 1e-12)))
    throw PostconditionViolated("chain split out of bounds");
  return out;
}

Rational even_odd_bound(const Tree& t) {
  const std::int64_t d = std::max(1, t.max_degree());
  return (Rational(2, 3) - Rational(1, 3 * d)) * Rational(t.vertex_count()) + Rational(1, 2);
}

EvenOddSplit even_odd_split(const Tree& t) {
  const int n = t.vertex_count();
  if (n < 2) throw PreconditionViolated("even_odd_split needs n >= 2");
  auto rv = RootedView::build(t, 0);
  // parity counts inside T(c) relative to c
  std::vector<std::int64_t> same(n, 1), other(n, 0);
  for (auto it = rv.order.rbegin(); it != rv.order.rend(); ++it)
    for (Vertex c : rv.children[*it]) {
      same[*it] += other[c];
      other[*it] += same[c];
    }
  std::int64_t by_parity[2] = {0, 0};
  for (Vertex w = 0; w < n; ++w) ++by_parity[rv.depth[w] % 2];

  // a = vertices of B_{u,w} at even distance from u, b = odd
  auto ab = [&](Vertex u, Vertex w) -> std::pair<std::int64_t, std::int64_t> {
    if (rv.parent[w] == u) return {other[w], same[w]};
    int pu = rv.depth[u] % 2;
    return {by_parity[pu] - same[u], by_parity[1 - pu] - other[u]};
  };
  auto gap = [&](Vertex u, Vertex w) {
    auto [a, b] = ab(u, w);
    return a > b ? a - b : b - a;
  };
  auto step = [&](Vertex u) {
    Vertex best = kUnmapped;
    for (Vertex w : t.neighbours(u))
      if (best == kUnmapped || gap(u, w) > gap(u, best)) best = w;
    return best;
  };

  Vertex cur = 0, nxt = step(0);
  for (int guard = 0;; ++guard) {
    if (guard > 4 * n) throw PostconditionViolated("even/odd walk did not settle");
    Vertex after = step(nxt);
    if (after == cur) break;
    cur = nxt;
    nxt = after;
  }
  Vertex r = gap(cur, nxt) <= gap(nxt, cur) ? cur : nxt;

  EvenOddSplit out;
  out.root = r;
  out.components = components_without(t, r);
  std::vector<std::int64_t> gaps;
  std::vector<char> even_heavy;
  for (Vertex w : t.neighbours(r)) {
    auto [a, b] = ab(r, w);
    out.even_count.push_back(static_cast<int>(a));
    out.odd_count.push_back(static_cast<int>(b));
    gaps.push_back(a > b ? a - b : b - a);
    even_heavy.push_back(a >= b);
  }
  const std::int64_t ell = 1 + std::accumulate(gaps.begin(), gaps.end(), std::int64_t{0});
  auto p = sum_partition_two(gaps, ell);
  std::vector<char> in_d1(gaps.size(), 0);
  for (int i : p.j1) in_d1[i] = 1;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    bool to_c1 = in_d1[i] ? even_heavy[i] : !even_heavy[i];
    (to_c1 ? out.class1 : out.class2).push_back(static_cast<int>(i));
  }
  auto lhs = [&](const std::vector<int>& cls) {
    std::vector<char> in(gaps.size(), 0);
    for (int i : cls) in[i] = 1;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i) s += in[i] ? out.even_count[i] : out.odd_count[i];
    return Rational(s);
  };
  out.lhs1 = lhs(out.class1);
  out.lhs2 = lhs(out.class2);
  out.bound = even_odd_bound(t);
  if (out.lhs1 > out.bound || out.lhs2 > out.bound)
    throw PostconditionViolated("even/odd split exceeds its bound");
  return out;
}

}  // namespace treebed
