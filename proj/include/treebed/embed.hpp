#pragma once

#include "treebed/graph.hpp"
#include "treebed/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treebed {

struct Embedding {
  std::vector<Vertex> map;  // per tree vertex, kUnmapped when absent

  Embedding() = default;
  explicit Embedding(int tree_vertices) : map(tree_vertices, kUnmapped) {}
  bool is_total() const;
  friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct Validation {
  bool ok = true;
  std::string violation;  // first problem found
};

// Total embeddings only; a partial map is reported as a violation.
Validation validate(const Graph& g, const Tree& t, const Embedding& e);
// Injectivity and edge preservation over the mapped vertices only.
Validation validate_partial(const Graph& g, const Tree& t, const Embedding& e);

enum class EmbedStatus { found, not_found, budget_exhausted };
const char* to_string(EmbedStatus s);

struct EmbedOutcome {
  EmbedStatus status = EmbedStatus::not_found;
  std::optional<Embedding> embedding;
  std::int64_t nodes_explored = 0;
  std::string method;
};

// Root of t (0 when unset) goes to x; children take the smallest free neighbour.
EmbedOutcome greedy_embed(const Graph& g, const Tree& t, Vertex x);

EmbedOutcome apex_split_embed(const Graph& g, Vertex x, const VertexSet& c1,
                              const VertexSet& c2, const Tree& t);

EmbedOutcome apex_three_split_embed(const Graph& g, Vertex x, const VertexSet& c1,
                                    const VertexSet& c2, const VertexSet& c3, const Tree& t);

EmbedOutcome bipartite_apex_embed(const Graph& g, Vertex x, const VertexSet& y1,
                                  const VertexSet& y2, const Tree& t);

struct PathEmbedOptions {
  Rational eps{1, 48};
  int slack = 64;
  std::uint64_t seed = 1;
  PathSearchOptions path;
};

struct PathEmbedReport {
  bool splittable = false;
  bool relaxed_window = false;  // path length taken below the heavy-path window
  int heavy_index = 0;          // the ell with |T(p_ell)| > k/6 >= |T(p_ell+1)|
  int path_length = 0;
  std::int64_t branch_vertices = 0;  // total size of the R_i pieces
  bool branch_budget_ok = true;      // branch_vertices <= (1/3 - 3 eps) k
  int placed_in_a = 0;
};

EmbedOutcome embed_via_path(const Graph& g, Vertex x, const VertexSet& a_set,
                            const VertexSet& b1_set, const VertexSet& b2_set, Vertex a, Vertex b,
                            const Tree& t, const PathEmbedOptions& opts = {},
                            PathEmbedReport* report = nullptr);

struct Portal {
  Vertex core_end = 0;
  Vertex far_end = 0;
  VertexSet component;  // the external component containing far_end
};

struct MatchingForestOptions {
  int reserve = 0;
  std::int64_t budget = 10'000'000;
};

EmbedOutcome matching_forest_embed(const Graph& g, const VertexSet& host_core,
                                   const std::vector<Portal>& portals, const Tree& t,
                                   const MatchingForestOptions& opts = {});

inline constexpr std::int64_t kDefaultOracleBudget = 100'000'000;

struct OracleOptions {
  std::int64_t budget = kDefaultOracleBudget;
  std::optional<Embedding> pins;
  std::optional<VertexSet> allowed;  // host vertices the search may use
};

// Exhaustive backtracking. not_found is returned only after the whole space was searched.
EmbedOutcome brute_force_embed(const Graph& g, const Tree& t, const OracleOptions& opts = {});

}  // namespace treebed
