#include "treebed/graph.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace treebed {
namespace {

enum Part : char { kNone = 0, kU = 1, kA1 = 2, kA2 = 3 };

// Shortest path inside one reservoir from any of `starts` to any of `goals`.
std::optional<std::vector<Vertex>> connect_within(const Graph& g, const std::vector<char>& part,
                                                  char which, const std::vector<Vertex>& starts,
                                                  const std::vector<char>& goal) {
  std::vector<Vertex> prev(g.vertex_count(), -2);
  std::deque<Vertex> queue;
  for (Vertex s : starts) {
    prev[s] = -1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    if (goal[v]) {
      std::vector<Vertex> path;
      for (Vertex w = v; w != -1; w = prev[w]) path.push_back(w);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Vertex w : g.neighbours(v))
      if (part[w] == which && prev[w] == -2) {
        prev[w] = v;
        queue.push_back(w);
      }
  }
  return std::nullopt;
}

std::optional<std::vector<Vertex>> random_split_attempt(const Graph& g, Vertex y, Vertex z,
                                                        int ell, int slack,
                                                        const PathSearchOptions& opts,
                                                        std::mt19937_64& rng) {
  const int n = g.vertex_count();
  const auto p = opts.reservoir_probability;
  std::uniform_int_distribution<std::int64_t> roll(0, p.denominator() - 1);
  std::vector<char> part(n, kNone);
  for (Vertex v = 0; v < n; ++v) {
    if (v == y || v == z) continue;
    std::int64_t r = roll(rng);
    if (r < p.numerator()) part[v] = kA1;
    else if (r < 2 * p.numerator()) part[v] = kA2;
    else part[v] = kU;
  }
  auto has_part_nbr = [&](Vertex v, char which) {
    for (Vertex w : g.neighbours(v))
      if (part[w] == which) return true;
    return false;
  };

  // greedy middle path of ell-3 edges inside U
  std::vector<Vertex> starts;
  for (Vertex v = 0; v < n; ++v)
    if (part[v] == kU && has_part_nbr(v, kA1)) starts.push_back(v);
  if (starts.empty()) return std::nullopt;
  Vertex first = starts[std::uniform_int_distribution<std::size_t>(0, starts.size() - 1)(rng)];
  std::vector<Vertex> middle{first};
  std::vector<char> on_path(n, 0);
  on_path[first] = 1;
  while (static_cast<int>(middle.size()) - 1 < ell - 3) {
    Vertex cur = middle.back(), next = -1;
    int best = -1;
    for (Vertex w : g.neighbours(cur)) {
      if (part[w] != kU || on_path[w]) continue;
      int free = 0;
      for (Vertex x : g.neighbours(w)) free += (part[x] == kU && !on_path[x]);
      if (free > best) {
        best = free;
        next = w;
      }
    }
    if (next < 0) return std::nullopt;
    on_path[next] = 1;
    middle.push_back(next);
  }
  Vertex u = middle.front(), v = middle.back();

  std::vector<Vertex> y_side, z_side;
  for (Vertex w : g.neighbours(y))
    if (part[w] == kA1) y_side.push_back(w);
  for (Vertex w : g.neighbours(z))
    if (part[w] == kA2) z_side.push_back(w);
  std::vector<char> near_u(n, 0), near_v(n, 0);
  for (Vertex w : g.neighbours(u)) near_u[w] = part[w] == kA1;
  for (Vertex w : g.neighbours(v)) near_v[w] = part[w] == kA2;
  auto q1 = connect_within(g, part, kA1, y_side, near_u);
  if (!q1) return std::nullopt;
  // searched from z's side, so it comes back reversed
  auto q2 = connect_within(g, part, kA2, z_side, near_v);
  if (!q2) return std::nullopt;
  std::reverse(q2->begin(), q2->end());
  std::vector<Vertex> path{y};
  path.insert(path.end(), q1->begin(), q1->end());
  path.insert(path.end(), middle.begin(), middle.end());
  path.insert(path.end(), q2->begin(), q2->end());
  path.push_back(z);
  int length = static_cast<int>(path.size()) - 1;
  if (length < ell + 1 || length > ell + slack) return std::nullopt;
  return path;
}

struct Dfs {
  const Graph& g;
  Vertex z;
  int lo, hi;
  std::int64_t budget;
  std::vector<int> dist_to_z;
  std::vector<char> used;
  std::vector<Vertex> path;
  std::int64_t nodes = 0;
  bool exhausted_budget = false;

  bool run(Vertex v) {
    if (++nodes > budget) {
      exhausted_budget = true;
      return false;
    }
    int depth = static_cast<int>(path.size()) - 1;
    if (v == z) return depth >= lo;
    for (Vertex w : g.neighbours(v)) {
      if (used[w] || dist_to_z[w] < 0 || depth + 1 + dist_to_z[w] > hi) continue;
      used[w] = 1;
      path.push_back(w);
      if (run(w)) return true;
      path.pop_back();
      used[w] = 0;
      if (exhausted_budget) return false;
    }
    return false;
  }
};

}  // namespace

PathSearchResult path_in_range(const Graph& g, Vertex y, Vertex z, int ell, int slack,
                               std::uint64_t seed, const PathSearchOptions& opts) {
  const int n = g.vertex_count();
  if (y == z || y < 0 || z < 0 || y >= n || z >= n)
    throw PreconditionViolated("path_in_range needs two distinct vertices");
  if (ell < 0 || slack < 1) throw PreconditionViolated("path_in_range needs ell >= 0, slack >= 1");
  if (opts.reservoir_probability <= 0 || opts.reservoir_probability * 2 >= 1)
    throw PreconditionViolated("reservoir probability must lie in (0, 1/2)");

  PathSearchResult out;
  if (ell >= 3) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < opts.random_attempts; ++attempt) {
      if (auto p = random_split_attempt(g, y, z, ell, slack, opts, rng)) {
        out.path = std::move(p);
        out.from_random_split = true;
        return out;
      }
    }
  }
  if (n > opts.exhaustive_cap) return out;

  std::vector<char> used(n, 0);
  used[y] = 1;
  Dfs dfs{g, z, ell + 1, ell + slack, opts.exhaustive_budget, bfs_distances(g, z), std::move(used), {y}};
  if (dfs.run(y)) {
    out.path = dfs.path;
    return out;
  }
  out.exhaustive = !dfs.exhausted_budget;
  return out;
}

}  // namespace treebed
