#pragma once

#include "treebed/embed.hpp"
#include "treebed/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treebed {

struct RichParams {
  Rational c{0};
  Rational rho{0};
  int k = 1;
};

struct RichReport {
  int min_degree = 0;
  bool min_degree_ok = false;
  bool cover_ok = false;
  std::optional<VertexSet> cover;   // in host numbering
  bool cover_budget_exhausted = false;
  Verdict cut_dense = Verdict::inconclusive;
  CutMode cut_mode = CutMode::exact;
  std::optional<CutWitness> cut_witness;  // in host numbering
  bool size_ok = false;

  // yes when all four checks hold, no when one of them definitely fails
  Verdict rich() const;
};

// Checks the four conditions on the subgraph induced by h.
RichReport is_rich(const Graph& g, const VertexSet& h, const RichParams& p, CutMode mode,
                   const CutOptions& cut = {});

// rho preset used by the refinement loop: delta^2 / 20000
Rational refine_rho_preset(const Rational& delta);
// rho presets of the rich collections: delta^2 / 10^10 and delta^2 / 10^12
Rational rich_rho_preset(const Rational& delta);
Rational rich_rho_preset_small(const Rational& delta);

struct RefineParams {
  Rational a{1, 2};
  Rational eps{1, 4};
  Rational delta{1, 2000};
  int k = 1;
  std::optional<Rational> rho;  // refine_rho_preset(delta) when unset
  // Tolerate delta >= eps/400 and report unmet bounds instead of throwing.
  bool relax = false;
};

struct RefineStep {
  int iteration = 0;
  VertexSet component;  // host numbering
  VertexSet side_a;
  VertexSet side_b;
  std::int64_t crossing = 0;
  Rational density{0};
  Rational threshold{0};  // (a + eps - (2i - 1) delta) k
  VertexSet removed;      // the set S
  int min_degree_after = 0;
};

struct RefineResult {
  VertexSet kept;  // vertices of H
  Graph h;         // on the host vertex numbering; removed vertices are isolated
  std::vector<VertexSet> components;
  std::vector<RefineStep> log;
  int deleted_vertices = 0;
  int min_degree = 0;  // over kept vertices
  Rational rho{0};
  bool relaxed_preconditions = false;
  bool deletion_bound_ok = true;    // deleted <= 200 delta |g|
  bool degree_bound_ok = true;      // min degree >= (a + eps - 400 delta) k
  bool components_certified = true; // every final component checked exactly
};

RefineResult refine_cut_dense(const Graph& g, const RefineParams& p, CutMode mode,
                              const CutOptions& cut = {});

struct VertexAffinity {
  int first = -1;   // component with the most neighbours
  int second = -1;  // runner-up
  int residual = 0; // |N(v) minus (C_first union C_second)|
};

struct CollectionReport {
  std::vector<VertexSet> components;
  std::vector<VertexAffinity> affinity;  // per host vertex
  std::vector<int> outer_periphery;      // |L_t(C_i) minus C_i|
  std::vector<bool> closed;              // t-closed
  VertexSet split;                       // s-split vertices
  bool maximal_coverage_verified = false;
};

CollectionReport classify_components(const Graph& g, const std::vector<VertexSet>& comps, int s,
                                     int t);

struct PropertyWitness {
  bool holds = true;
  std::vector<Vertex> vertices;
  std::vector<int> components;
};

struct IntersectionReport {
  PropertyWitness l1;
  PropertyWitness l2;
  PropertyWitness l3;
};

struct IntersectionOptions {
  bool check_rich = true;
  CutMode mode = CutMode::exact;
};

IntersectionReport intersection_property_report(const Graph& g, const std::vector<VertexSet>& comps,
                                                int tree_max_degree, const Rational& eps, int k,
                                                const IntersectionOptions& opts = {});

// Embeds t from an L1 witness: the witness vertex as apex, its three components as classes.
EmbedOutcome embed_from_l1_witness(const Graph& g, const std::vector<VertexSet>& comps,
                                   const PropertyWitness& l1, const Tree& t);

struct ExternalInternal {
  VertexSet external;
  VertexSet internal;
};

// comps[0] and comps[1] are the designated pair.
ExternalInternal external_internal_classify(const Graph& g, Vertex x,
                                            const std::vector<VertexSet>& comps,
                                            const Rational& eta_k);

struct PeripheralMatching {
  Matching edges;             // (neighbour of x, external vertex)
  std::vector<int> injection; // per matched pair, its component index
};

PeripheralMatching x_peripheral_matching(const Graph& g, Vertex x,
                                         const std::vector<VertexSet>& comps,
                                         const Rational& eta_k);

struct DecomposeResult {
  std::vector<VertexSet> parts;
  VertexSet uncovered;
  Rational coverage{0};
  bool heuristic = true;
};

DecomposeResult rich_decompose(const Graph& g, const RichParams& p, CutMode mode,
                               const CutOptions& cut = {});

}  // namespace treebed
