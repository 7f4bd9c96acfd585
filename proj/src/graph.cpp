#include "treebed/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>

namespace treebed {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw PreconditionViolated("not a number: " + std::string(text));
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw PreconditionViolated("zero denominator: " + std::string(text));
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.size() > 12) frac.resize(12);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    bool negative = !digits.empty() && digits[0] == '-';
    std::int64_t whole = digits.empty() || digits == "-" ? 0 : parse_int(digits);
    std::int64_t part = frac.empty() ? 0 : parse_int(frac);
    Rational r(std::abs(whole) * scale + part, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

VertexSet::VertexSet(int universe, std::vector<Vertex> members)
    : universe_(universe), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && (members_.front() < 0 || members_.back() >= universe_))
    throw PreconditionViolated("vertex set member out of range");
}

VertexSet VertexSet::all(int universe) {
  std::vector<Vertex> m(universe);
  std::iota(m.begin(), m.end(), 0);
  return VertexSet(universe, std::move(m));
}

VertexSet VertexSet::from_mask(const std::vector<char>& mask) {
  std::vector<Vertex> m;
  for (int v = 0; v < static_cast<int>(mask.size()); ++v)
    if (mask[v]) m.push_back(v);
  return VertexSet(static_cast<int>(mask.size()), std::move(m));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<char> VertexSet::mask() const {
  std::vector<char> m(universe_, 0);
  for (Vertex v : members_) m[v] = 1;
  return m;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::max(a.universe(), b.universe()), std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::max(a.universe(), b.universe()), std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(a.universe(), std::move(out));
}

Graph::Graph(int n) : adj_(n) {
  if (n < 0) throw PreconditionViolated("negative vertex count");
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw PreconditionViolated("edge endpoint out of range");
    if (u == v) throw PreconditionViolated("self-loop at vertex " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  edges_ = 0;
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    edges_ += static_cast<std::int64_t>(list.size());
  }
  edges_ /= 2;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::min_degree() const {
  if (adj_.empty()) return 0;
  int d = degree(0);
  for (Vertex v = 1; v < vertex_count(); ++v) d = std::min(d, degree(v));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (Vertex v = 0; v < vertex_count(); ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edges_));
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  InducedSubgraph out;
  out.from_parent.assign(g.vertex_count(), kUnmapped);
  for (Vertex v : s) {
    out.from_parent[v] = static_cast<Vertex>(out.to_parent.size());
    out.to_parent.push_back(v);
  }
  std::vector<Edge> edges;
  for (Vertex v : s)
    for (Vertex w : g.neighbours(v))
      if (v < w && out.from_parent[w] != kUnmapped)
        edges.emplace_back(out.from_parent[v], out.from_parent[w]);
  out.graph = Graph(s.size(), edges);
  return out;
}

Graph remove_edges(const Graph& g, std::span<const Edge> doomed) {
  std::vector<Edge> kill(doomed.begin(), doomed.end());
  for (auto& e : kill)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(kill.begin(), kill.end());
  std::vector<Edge> keep;
  for (const auto& e : g.edges())
    if (!std::binary_search(kill.begin(), kill.end(), e)) keep.push_back(e);
  return Graph(g.vertex_count(), keep);
}

Graph add_edges(const Graph& g, std::span<const Edge> extra) {
  auto all = g.edges();
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph(g.vertex_count(), all);
}

int min_degree_within(const Graph& g, const VertexSet& s) {
  if (s.empty()) return 0;
  int best = -1;
  for (Vertex v : s) {
    int d = count_neighbours_in(g, v, s);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

int count_neighbours_in(const Graph& g, Vertex v, const VertexSet& s) {
  int c = 0;
  for (Vertex w : g.neighbours(v))
    if (s.contains(w)) ++c;
  return c;
}

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& within) {
  const int n = g.vertex_count();
  auto inside = within.mask();
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> comps;
  for (Vertex s : within) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex w : g.neighbours(comp[i]))
        if (inside[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    comps.emplace_back(n, std::move(comp));
  }
  return comps;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  return connected_components(g, VertexSet::all(g.vertex_count()));
}

bool is_connected(const Graph& g) {
  return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

VertexSet periphery(const Graph& g, const VertexSet& s, int d) {
  if (d <= 0) return VertexSet::all(g.vertex_count());
  auto inside = s.mask();
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    int c = 0;
    for (Vertex w : g.neighbours(v)) c += inside[w];
    if (c >= d) out.push_back(v);
  }
  return VertexSet(g.vertex_count(), std::move(out));
}

VertexSet periphery(const Graph& g, const VertexSet& s, const Rational& d) {
  return periphery(g, s, static_cast<int>(ceil_of(d)));
}

VertexSet second_neighbourhood(const Graph& g, Vertex x) {
  std::vector<char> mark(g.vertex_count(), 0);
  for (Vertex w : g.neighbours(x))
    for (Vertex y : g.neighbours(w))
      if (y != x) mark[y] = 1;
  return VertexSet::from_mask(mark);
}

namespace {

class CoverSearch {
 public:
  CoverSearch(const Graph& g, std::int64_t budget)
      : g_(g), budget_(budget), removed_(g.vertex_count(), 0), deg_(g.vertex_count()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) deg_[v] = g.degree(v);
    edges_ = g.edge_count();
  }

  bool run(int k) {
    if (++nodes_ > budget_)
      throw SearchBudgetExceeded("vertex cover search exceeded " +
                                 std::to_string(budget_) + " nodes");
    if (edges_ == 0) return true;
    if (k <= 0) return false;
    Vertex best = -1;
    for (Vertex v = 0; v < g_.vertex_count(); ++v)
      if (!removed_[v] && (best < 0 || deg_[v] > deg_[best])) best = v;
    if (edges_ > static_cast<std::int64_t>(k) * deg_[best]) return false;

    take(best);
    if (run(k - 1)) return true;
    untake(best);

    std::vector<Vertex> nbrs;
    for (Vertex w : g_.neighbours(best))
      if (!removed_[w]) nbrs.push_back(w);
    if (static_cast<int>(nbrs.size()) > k) return false;
    for (Vertex w : nbrs) take(w);
    if (run(k - static_cast<int>(nbrs.size()))) return true;
    for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) untake(*it);
    return false;
  }

  std::vector<Vertex> cover;

 private:
  void take(Vertex v) {
    removed_[v] = 1;
    cover.push_back(v);
    for (Vertex w : g_.neighbours(v))
      if (!removed_[w]) {
        --deg_[w];
        --edges_;
      }
  }
  void untake(Vertex v) {
    removed_[v] = 0;
    cover.pop_back();
    for (Vertex w : g_.neighbours(v))
      if (!removed_[w]) {
        ++deg_[w];
        ++edges_;
      }
  }

  const Graph& g_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::vector<char> removed_;
  std::vector<int> deg_;
  std::int64_t edges_ = 0;
};

}  // namespace

std::optional<VertexSet> vertex_cover_at_most(const Graph& g, int bound,
                                              std::int64_t node_budget) {
  const int n = g.vertex_count();
  if (bound < 0) return std::nullopt;
  std::vector<Vertex> touched;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) > 0) touched.push_back(v);
  if (static_cast<int>(touched.size()) <= bound) return VertexSet(n, touched);
  CoverSearch search(g, node_budget);
  if (!search.run(bound)) return std::nullopt;
  return VertexSet(n, search.cover);
}

Matching bipartite_matching_lower(const Graph& g, const VertexSet& x_side,
                                  const VertexSet& y_side) {
  if (!set_intersection(x_side, y_side).empty())
    throw PreconditionViolated("matching sides overlap");
  const int n = g.vertex_count();
  auto in_x = x_side.mask();
  auto in_y = y_side.mask();
  int max_x_degree = 0;
  for (Vertex x : x_side) {
    int d = 0;
    for (Vertex w : g.neighbours(x)) d += in_y[w];
    max_x_degree = std::max(max_x_degree, d);
  }
  for (Vertex y : y_side) {
    bool any = false;
    for (Vertex w : g.neighbours(y)) any = any || in_x[w];
    if (!any)
      throw PreconditionViolated("vertex " + std::to_string(y) + " has no neighbour across");
  }

  std::vector<Vertex> mate(n, kUnmapped);  // mate of a y-vertex, or of an x-vertex
  std::vector<int> stamp(n, -1);
  int round = 0;
  auto augment = [&](auto&& self, Vertex x) -> bool {
    for (Vertex y : g.neighbours(x)) {
      if (!in_y[y] || stamp[y] == round) continue;
      stamp[y] = round;
      if (mate[y] == kUnmapped || self(self, mate[y])) {
        mate[y] = x;
        mate[x] = y;
        return true;
      }
    }
    return false;
  };
  for (Vertex x : x_side) {
    ++round;
    augment(augment, x);
  }
  Matching m;
  for (Vertex x : x_side)
    if (mate[x] != kUnmapped) m.pairs.emplace_back(x, mate[x]);
  if (!y_side.empty() &&
      static_cast<std::int64_t>(m.size()) * max_x_degree < y_side.size())
    throw PostconditionViolated("matching smaller than |Y|/d");
  return m;
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbours(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

std::optional<std::vector<Vertex>> short_even_walk(const Graph& g, Vertex u, Vertex v) {
  const int n = g.vertex_count();
  if (u == v) throw PreconditionViolated("short_even_walk needs distinct endpoints");
  // state 2*w + parity
  std::vector<int> prev(2 * n, -2);
  std::deque<int> queue{2 * u};
  prev[2 * u] = -1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (s == 2 * v) break;
    Vertex w = s / 2;
    int parity = s % 2;
    for (Vertex x : g.neighbours(w)) {
      int t = 2 * x + (1 - parity);
      if (prev[t] == -2) {
        prev[t] = s;
        queue.push_back(t);
      }
    }
  }
  if (prev[2 * v] == -2) return std::nullopt;
  std::vector<Vertex> walk;
  for (int s = 2 * v; s != -1; s = prev[s]) walk.push_back(s / 2);
  std::reverse(walk.begin(), walk.end());
  return walk;
}

int diameter(const Graph& g) {
  int best = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    for (int d : bfs_distances(g, s)) {
      if (d < 0) throw Disconnected("graph is disconnected");
      best = std::max(best, d);
    }
  }
  return best;
}

int diameter_bound(const Graph& g) {
  return 3 * g.vertex_count() / (g.min_degree() + 1) - 1;
}

std::optional<Bipartition> bipartition(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> side(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::deque<Vertex> queue{s};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbours(v)) {
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          queue.push_back(w);
        } else if (side[w] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Vertex> a, b;
  for (Vertex v = 0; v < n; ++v) (side[v] == 0 ? a : b).push_back(v);
  return Bipartition{VertexSet(n, a), VertexSet(n, b)};
}

}  // namespace treebed
