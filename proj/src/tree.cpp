#include "treebed/tree.hpp"

#include <algorithm>
#include <numeric>

namespace treebed {

Tree::Tree(int n, std::vector<Edge> edges, std::optional<Vertex> root)
    : n_(n), edges_(std::move(edges)), adj_(n > 0 ? n : 0), root_(root) {
  if (n < 1) throw PreconditionViolated("a tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != n - 1)
    throw PreconditionViolated("a tree on " + std::to_string(n) + " vertices needs " +
                               std::to_string(n - 1) + " edges");
  if (root_ && (*root_ < 0 || *root_ >= n)) throw PreconditionViolated("root out of range");
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw PreconditionViolated("tree edge out of range");
    if (u == v) throw PreconditionViolated("self-loop in tree");
    if (u > v) std::swap(u, v);
    int ru = find(u), rv = find(v);
    if (ru == rv) throw PreconditionViolated("tree edges contain a cycle");
    uf[ru] = rv;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int Tree::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

Tree Tree::with_root(std::optional<Vertex> r) const {
  Tree copy = *this;
  if (r && (*r < 0 || *r >= n_)) throw PreconditionViolated("root out of range");
  copy.root_ = r;
  return copy;
}

RootedView RootedView::build(const Tree& t, Vertex root) {
  const int n = t.vertex_count();
  if (root < 0 || root >= n) throw PreconditionViolated("root out of range");
  RootedView rv;
  rv.root = root;
  rv.parent.assign(n, kUnmapped);
  rv.children.assign(n, {});
  rv.subtree_size.assign(n, 1);
  rv.depth.assign(n, 0);
  rv.order.reserve(n);
  rv.order.push_back(root);
  for (std::size_t i = 0; i < rv.order.size(); ++i) {
    Vertex v = rv.order[i];
    for (Vertex w : t.neighbours(v)) {
      if (w == rv.parent[v]) continue;
      rv.parent[w] = v;
      rv.depth[w] = rv.depth[v] + 1;
      rv.children[v].push_back(w);
      rv.order.push_back(w);
    }
  }
  for (auto it = rv.order.rbegin(); it != rv.order.rend(); ++it)
    if (rv.parent[*it] != kUnmapped) rv.subtree_size[rv.parent[*it]] += rv.subtree_size[*it];
  return rv;
}

std::vector<Vertex> RootedView::subtree(Vertex v) const {
  std::vector<Vertex> out{v};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Vertex c : children[out[i]]) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

InducedTree induced_tree(const Tree& t, const VertexSet& s) {
  if (s.empty()) throw PreconditionViolated("induced tree on an empty set");
  InducedTree out;
  out.from_parent.assign(t.vertex_count(), kUnmapped);
  for (Vertex v : s) {
    out.from_parent[v] = static_cast<Vertex>(out.to_parent.size());
    out.to_parent.push_back(v);
  }
  std::vector<Edge> edges;
  for (auto [u, v] : t.edges())
    if (out.from_parent[u] != kUnmapped && out.from_parent[v] != kUnmapped)
      edges.emplace_back(out.from_parent[u], out.from_parent[v]);
  out.tree = Tree(s.size(), std::move(edges));
  return out;
}

EvenOdd even_odd_sets(const Tree& t, Vertex v) {
  auto rv = RootedView::build(t, v);
  std::vector<Vertex> even, odd;
  for (Vertex w = 0; w < t.vertex_count(); ++w) {
    if (w == v) continue;
    (rv.depth[w] % 2 == 0 ? even : odd).push_back(w);
  }
  return {VertexSet(t.vertex_count(), even), VertexSet(t.vertex_count(), odd)};
}

std::pair<VertexSet, VertexSet> bipartition_classes(const Tree& t) {
  auto rv = RootedView::build(t, 0);
  std::vector<Vertex> a, b;
  for (Vertex w = 0; w < t.vertex_count(); ++w) (rv.depth[w] % 2 == 0 ? a : b).push_back(w);
  const std::int64_t k = t.edge_count(), d = t.max_degree();
  if (k > 0 && (static_cast<std::int64_t>(a.size()) * d < k ||
                static_cast<std::int64_t>(b.size()) * d < k))
    throw PostconditionViolated("bipartition class smaller than k/maxdeg");
  return {VertexSet(t.vertex_count(), a), VertexSet(t.vertex_count(), b)};
}

Vertex balanced_separator_vertex(const Tree& t) {
  const int n = t.vertex_count();
  auto rv = RootedView::build(t, 0);
  Vertex v = 0;
  for (;;) {
    Vertex heavy = kUnmapped;
    for (Vertex c : rv.children[v])
      if (heavy == kUnmapped || rv.subtree_size[c] > rv.subtree_size[heavy]) heavy = c;
    if (heavy == kUnmapped || 2 * rv.subtree_size[heavy] <= n) break;
    v = heavy;
  }
  for (const auto& comp : components_without(t, v))
    if (2 * comp.size() > n) throw PostconditionViolated("separator component too large");
  return v;
}

std::vector<VertexSet> components_without(const Tree& t, Vertex v) {
  const int n = t.vertex_count();
  std::vector<VertexSet> out;
  for (Vertex start : t.neighbours(v)) {
    std::vector<Vertex> comp{start};
    std::vector<Vertex> from{v};
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex w : t.neighbours(comp[i]))
        if (w != from[i]) {
          comp.push_back(w);
          from.push_back(comp[i]);
        }
    out.emplace_back(n, std::move(comp));
  }
  return out;
}

bool Subtree::contains(Vertex v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

}  // namespace treebed
