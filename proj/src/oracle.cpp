#include "treebed/embed.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace treebed {
namespace {

template <int W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  int first() const {
    for (int i = 0; i < W; ++i)
      if (w[i]) return i * 64 + std::countr_zero(w[i]);
    return -1;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    for (int i = 0; i < W; ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r;
    for (int i = 0; i < W; ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }
  Bits minus(const Bits& o) const {
    Bits r;
    for (int i = 0; i < W; ++i) r.w[i] = w[i] & ~o.w[i];
    return r;
  }
};

struct BudgetExhausted {};

template <int W>
class Search {
 public:
  Search(const Graph& g, const Tree& t, const OracleOptions& opts)
      : g_(g), t_(t), budget_(opts.budget), n_(g.vertex_count()), nt_(t.vertex_count()) {
    adj_.resize(n_);
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex w : g.neighbours(v)) adj_[v].set(w);
    if (opts.allowed) {
      for (Vertex v : *opts.allowed) allowed_.set(v);
    } else {
      for (Vertex v = 0; v < n_; ++v) allowed_.set(v);
    }
    host_degree_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) host_degree_[v] = (adj_[v] & allowed_).count();
    host_order_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) host_order_[v] = v;
    std::stable_sort(host_order_.begin(), host_order_.end(),
                     [&](Vertex a, Vertex b) { return host_degree_[a] > host_degree_[b]; });

    pin_.assign(nt_, kUnmapped);
    Vertex root = kUnmapped;
    if (opts.pins) {
      for (Vertex u = 0; u < nt_; ++u) {
        pin_[u] = opts.pins->map[u];
        if (pin_[u] != kUnmapped && root == kUnmapped) root = u;
      }
    }
    if (root == kUnmapped) {
      root = 0;
      for (Vertex u = 1; u < nt_; ++u)
        if (t.degree(u) > t.degree(root)) root = u;
    }
    rv_ = RootedView::build(t, root);
    phi_.assign(nt_, kUnmapped);
  }

  EmbedOutcome run() {
    EmbedOutcome out;
    out.method = "oracle";
    try {
      if (place(0)) {
        out.status = EmbedStatus::found;
        Embedding e;
        e.map = phi_;
        out.embedding = std::move(e);
      } else {
        out.status = EmbedStatus::not_found;
      }
    } catch (const BudgetExhausted&) {
      out.status = EmbedStatus::budget_exhausted;
    }
    out.nodes_explored = nodes_;
    return out;
  }

 private:
  bool place(int idx) {
    if (idx == nt_) return true;
    const Vertex u = rv_.order[idx];
    Bits<W> cand;
    if (idx == 0) {
      cand = allowed_;
    } else {
      cand = (adj_[phi_[rv_.parent[u]]] & allowed_).minus(used_);
    }
    if (pin_[u] != kUnmapped) {
      bool ok = cand.test(pin_[u]);
      cand = Bits<W>{};
      if (ok) cand.set(pin_[u]);
    }
    if (!cand.any()) return false;
    const int need = t_.degree(u);
    for (Vertex h : host_order_) {
      if (!cand.test(h) || host_degree_[h] < need) continue;
      if (++nodes_ > budget_) throw BudgetExhausted{};
      phi_[u] = h;
      used_.set(h);
      if (feasible(idx + 1) && place(idx + 1)) return true;
      used_.reset(h);
      phi_[u] = kUnmapped;
    }
    return false;
  }

  // Necessary conditions for extending the current partial map.
  bool feasible(int next) {
    const int remaining = nt_ - next;
    if (remaining == 0) return true;
    Bits<W> free = allowed_.minus(used_);
    if (free.count() < remaining) return false;

    // unmapped subtrees hanging from mapped parents
    items_.clear();
    for (int i = next; i < nt_; ++i) {
      Vertex c = rv_.order[i];
      Vertex p = rv_.parent[c];
      if (phi_[p] == kUnmapped) continue;
      items_.push_back({rv_.subtree_size[c], phi_[p], c});
    }
    // each mapped parent needs one free neighbour per pending child
    std::sort(items_.begin(), items_.end(),
              [](const Item& a, const Item& b) { return a.host < b.host; });
    for (std::size_t i = 0; i < items_.size();) {
      std::size_t j = i;
      while (j < items_.size() && items_[j].host == items_[i].host) ++j;
      if ((adj_[items_[i].host] & free).count() < static_cast<int>(j - i)) return false;
      i = j;
    }

    // components of the free host vertices
    comps_.clear();
    Bits<W> left = free;
    while (left.any()) {
      Bits<W> comp;
      Bits<W> frontier;
      frontier.set(left.first());
      while (frontier.any()) {
        comp = comp | frontier;
        Bits<W> grow;
        for (int wi = 0; wi < W; ++wi) {
          std::uint64_t word = frontier.w[wi];
          while (word) {
            int v = wi * 64 + std::countr_zero(word);
            word &= word - 1;
            grow = grow | adj_[v];
          }
        }
        frontier = (grow & left).minus(comp);
      }
      left = left.minus(comp);
      comps_.push_back({comp, comp.count()});
    }
    if (comps_.size() == 1) return true;

    // pack pending subtrees into free components touching their parent's image
    std::sort(items_.begin(), items_.end(),
              [](const Item& a, const Item& b) { return a.size > b.size; });
    masks_.assign(items_.size(), 0);
    if (comps_.size() > 64) return true;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      std::uint64_t m = 0;
      for (std::size_t c = 0; c < comps_.size(); ++c)
        if (comps_[c].size >= items_[i].size && (adj_[items_[i].host] & comps_[c].bits).any())
          m |= std::uint64_t{1} << c;
      if (!m) return false;
      masks_[i] = m;
    }
    capacity_.resize(comps_.size());
    for (std::size_t c = 0; c < comps_.size(); ++c) capacity_[c] = comps_[c].size;
    pack_steps_ = 0;
    return pack(0);
  }

  bool pack(std::size_t i) {
    if (i == items_.size()) return true;
    if (++pack_steps_ > 20000) return true;  // give up proving infeasibility
    for (std::size_t c = 0; c < comps_.size(); ++c) {
      if (!((masks_[i] >> c) & 1) || capacity_[c] < items_[i].size) continue;
      capacity_[c] -= items_[i].size;
      bool ok = pack(i + 1);
      capacity_[c] += items_[i].size;
      if (ok) return true;
    }
    return false;
  }

  struct Item {
    int size;
    Vertex host;
    Vertex child;
  };
  struct Comp {
    Bits<W> bits;
    int size;
  };

  const Graph& g_;
  const Tree& t_;
  std::int64_t budget_;
  int n_, nt_;
  std::vector<Bits<W>> adj_;
  Bits<W> allowed_, used_;
  std::vector<int> host_degree_;
  std::vector<Vertex> host_order_;
  std::vector<Vertex> pin_;
  RootedView rv_;
  std::vector<Vertex> phi_;
  std::int64_t nodes_ = 0;
  std::vector<Item> items_;
  std::vector<Comp> comps_;
  std::vector<std::uint64_t> masks_;
  std::vector<int> capacity_;
  std::int64_t pack_steps_ = 0;
};

template <int W>
EmbedOutcome run_search(const Graph& g, const Tree& t, const OracleOptions& opts) {
  return Search<W>(g, t, opts).run();
}

}  // namespace

EmbedOutcome brute_force_embed(const Graph& g, const Tree& t, const OracleOptions& opts) {
  const int n = g.vertex_count();
  if (opts.pins) {
    auto check = validate_partial(g, t, *opts.pins);
    if (!check.ok) throw PreconditionViolated("inconsistent pins: " + check.violation);
    if (opts.allowed)
      for (Vertex h : opts.pins->map)
        if (h != kUnmapped && !opts.allowed->contains(h))
          throw PreconditionViolated("pinned host vertex outside the allowed set");
  }
  if (opts.allowed && opts.allowed->universe() != n)
    throw PreconditionViolated("allowed set has the wrong universe");
  EmbedOutcome out;
  if (t.vertex_count() > n) {
    out.status = EmbedStatus::not_found;
    out.method = "oracle";
    return out;
  }
  if (n <= 64) out = run_search<1>(g, t, opts);
  else if (n <= 128) out = run_search<2>(g, t, opts);
  else if (n <= 256) out = run_search<4>(g, t, opts);
  else if (n <= 512) out = run_search<8>(g, t, opts);
  else if (n <= 1024) out = run_search<16>(g, t, opts);
  else throw PreconditionViolated("brute_force_embed handles at most 1024 host vertices");
  if (out.status == EmbedStatus::found) {
    auto check = validate(g, t, *out.embedding);
    if (!check.ok) throw std::logic_error("oracle produced an invalid embedding: " + check.violation);
  }
  return out;
}

}  // namespace treebed
