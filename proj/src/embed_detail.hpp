#pragma once

#include "treebed/embed.hpp"

#include <deque>
#include <stdexcept>

namespace treebed::detail {

// Places every tree vertex below `starts` (whose parents are already mapped) in BFS order,
// each on the smallest free neighbour of its parent's image that allowed(tree_vertex, host)
// accepts. Returns the tree vertex that could not be placed, or kUnmapped on success.
template <class Allowed>
Vertex greedy_extend(const Graph& g, const RootedView& rv, const std::vector<Vertex>& starts,
                     Allowed&& allowed, std::vector<char>& used, std::vector<Vertex>& phi) {
  std::deque<Vertex> queue(starts.begin(), starts.end());
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    Vertex host = kUnmapped;
    for (Vertex h : g.neighbours(phi[rv.parent[u]]))
      if (!used[h] && allowed(u, h)) {
        host = h;
        break;
      }
    if (host == kUnmapped) return u;
    phi[u] = host;
    used[host] = 1;
    for (Vertex c : rv.children[u]) queue.push_back(c);
  }
  return kUnmapped;
}

inline EmbedOutcome certified(const Graph& g, const Tree& t, std::vector<Vertex> phi,
                              std::string method, std::int64_t nodes = 0) {
  Embedding e;
  e.map = std::move(phi);
  auto check = validate(g, t, e);
  if (!check.ok) throw std::logic_error(method + " produced an invalid embedding: " + check.violation);
  EmbedOutcome out;
  out.status = EmbedStatus::found;
  out.embedding = std::move(e);
  out.nodes_explored = nodes;
  out.method = std::move(method);
  return out;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionViolated(what);
}

inline int neighbours_in(const Graph& g, Vertex v, const std::vector<char>& mask) {
  int c = 0;
  for (Vertex w : g.neighbours(v)) c += mask[w];
  return c;
}

}  // namespace treebed::detail
