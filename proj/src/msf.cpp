#include "treebed/tree.hpp"

#include <algorithm>
#include <limits>

namespace treebed {

std::int64_t msf_steiner_cap(int max_degree) {
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max();
  std::int64_t value = 1;
  for (int i = 0; i < 4 * max_degree + 1; ++i) {
    if (max_degree != 0 && value > limit / max_degree) return limit;
    value *= max_degree;
  }
  return value;
}

std::int64_t msf_p3_threshold(int max_degree, std::int64_t factor) {
  const std::int64_t cap = msf_steiner_cap(max_degree);
  if (cap > std::numeric_limits<std::int64_t>::max() / factor)
    return std::numeric_limits<std::int64_t>::max();
  return cap * factor;
}

MSFDecomposition msf_decomposition(const Tree& t, const MsfOptions& opts) {
  const int n = t.vertex_count();
  if (n < 2) throw PreconditionViolated("msf_decomposition needs n >= 2");
  const int delta = t.max_degree();
  const std::int64_t k = t.edge_count();

  MSFDecomposition out;
  out.root = balanced_separator_vertex(t);
  auto rv = RootedView::build(t, out.root);

  auto escape_of = [&](Vertex v) {
    Vertex best = kUnmapped;
    for (Vertex c : rv.children[v])
      if (best == kUnmapped || rv.subtree_size[c] > rv.subtree_size[best]) best = c;
    return best;
  };
  auto in_b = [&](Vertex v) {
    return rv.depth[v] >= 2 && rv.depth[v] <= 4 * delta && rv.depth[v] % 2 == 0;
  };

  std::vector<char> covered(n, 0);
  for (Vertex v : rv.order) {
    if (!in_b(v)) continue;
    Vertex e = escape_of(v);
    if (e == kUnmapped) continue;
    for (Vertex w : rv.subtree(e)) covered[w] = 1;
  }

  std::vector<char> in_f(n, 0);
  for (Vertex v : rv.order) {
    if (!in_b(v) || covered[v]) continue;
    Vertex e = escape_of(v);
    if (e == kUnmapped) continue;
    out.matching.emplace_back(v, e);
    out.escape[v] = e;
    auto sub = rv.subtree(e);
    for (Vertex w : sub) in_f[w] = 1;
    out.f_components.emplace_back(n, std::move(sub));
  }
  std::sort(out.matching.begin(), out.matching.end());
  std::vector<Vertex> s_list, f_list;
  for (Vertex v = 0; v < n; ++v) (in_f[v] ? f_list : s_list).push_back(v);
  out.s_tree = VertexSet(n, s_list);
  out.f_forest = VertexSet(n, f_list);

  // prune non-terminal leaves of S to get the spanning subtree of the matched ends
  std::vector<char> alive(n, 0), terminal(n, 0);
  for (Vertex v : s_list) alive[v] = 1;
  for (auto [s, f] : out.matching) terminal[s] = 1;
  std::vector<int> deg(n, 0);
  for (auto [u, v] : t.edges())
    if (alive[u] && alive[v]) {
      ++deg[u];
      ++deg[v];
    }
  int remaining = static_cast<int>(s_list.size());
  std::vector<Vertex> queue;
  for (Vertex v : s_list)
    if (!terminal[v] && deg[v] <= 1) queue.push_back(v);
  while (!queue.empty()) {
    Vertex v = queue.back();
    queue.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    --remaining;
    for (Vertex w : t.neighbours(v))
      if (alive[w] && --deg[w] <= 1 && !terminal[w]) queue.push_back(w);
  }
  out.steiner_size = out.matching.empty() ? 0 : remaining;
  out.steiner_cap = msf_steiner_cap(delta);

  const std::int64_t half = (k + 1) / 2;
  std::size_t edge_total = out.matching.size();
  for (auto [u, v] : t.edges()) {
    bool su = !in_f[u], sv = !in_f[v];
    if (su && sv) ++edge_total;
    if (!su && !sv) ++edge_total;
  }
  bool ok = edge_total == static_cast<std::size_t>(k) && out.steiner_size <= out.steiner_cap;
  for (auto [s, f] : out.matching)
    ok = ok && !in_f[s] && in_f[f] && rv.depth[s] % 2 == 0;
  for (const auto& c : out.f_components) ok = ok && c.size() <= half;
  out.p3_asserted = k >= msf_p3_threshold(delta, opts.threshold_factor);
  if (out.p3_asserted) ok = ok && out.s_tree.size() <= half;
  if (!ok) throw PostconditionViolated("matching/subtree/forest decomposition invariant failed");
  return out;
}

}  // namespace treebed
