#pragma once

#include "treebed/embed.hpp"
#include "treebed/graph.hpp"
#include "treebed/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treebed {

enum class Template { two_thirds, alpha, k2_maxdeg, second_nbhd };
enum class HostFamily { random_min_degree, clique_mixture, bipartite_blend, fig1_mix };
enum class TreeFamily { random, caterpillar };

const char* to_string(Template t);
const char* to_string(HostFamily f);
const char* to_string(TreeFamily f);
Template parse_template(const std::string& s);
HostFamily parse_host_family(const std::string& s);
TreeFamily parse_tree_family(const std::string& s);

struct ExperimentConfig {
  Template conjecture = Template::two_thirds;
  int k_min = 8;
  int k_max = 10;
  int tree_max_degree = 3;
  HostFamily host = HostFamily::random_min_degree;
  int host_max_vertices = 16;
  // added to the template's minimum-degree threshold, both when generating and when checking
  int min_degree_offset = 0;
  Rational alpha{1, 4};
  Rational extra_edge_probability{1, 10};
  TreeFamily tree = TreeFamily::random;
  int trials = 200;
  std::uint64_t seed = 1;
  std::int64_t oracle_budget = kDefaultOracleBudget;
  int oracle_max_host = 16;
  int oracle_max_k = 12;
  CutMode mode = CutMode::heuristic;
  int threads = 1;
  bool record_wall_time = false;
};

void validate_config(const ExperimentConfig& cfg);
std::string config_json(const ExperimentConfig& cfg);  // canonical, stable field order
std::uint64_t config_hash(const ExperimentConfig& cfg);

struct TemplateCheck {
  bool ok = false;
  int min_degree = 0;
  int max_degree = 0;
  Rational min_required{0};
  Rational max_required{0};  // or the first/second neighbourhood requirement
  std::string detail;
};

TemplateCheck check_template(const Graph& g, Template tpl, int k, int tree_max_degree,
                             const Rational& alpha, int min_degree_offset = 0);

struct StageOutcome {
  std::string stage;
  std::string outcome;  // found, not_applicable, not_found, failed
  std::string detail;
};

enum class TrialVerdict { embedded, counterexample_candidate, inconclusive };
const char* to_string(TrialVerdict v);

struct TrialRecord {
  int index = 0;
  std::string config_hash;
  std::string host_id;
  std::string tree_id;
  std::string host_distribution;
  int k = 0;
  int host_vertices = 0;
  std::int64_t host_edges = 0;
  int tree_max_degree = 0;
  bool fig1_instance = false;
  TemplateCheck degree_check;
  bool skipped = false;
  std::vector<StageOutcome> pipeline;
  std::string pipeline_method;  // empty when no stage found an embedding
  std::string oracle_status;    // found, not_found, budget_exhausted, outside_envelope
  std::int64_t oracle_nodes = 0;
  TrialVerdict verdict = TrialVerdict::inconclusive;
  bool consistent = true;
  std::string error;
  std::optional<double> wall_ms;
};

struct SweepSummary {
  int trials = 0;
  int skipped = 0;
  int embedded = 0;
  int counterexample_candidates = 0;
  int inconclusive = 0;
  int inconsistencies = 0;
  int errors = 0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  SweepSummary summary;
};

struct TrialInstance {
  Graph host;
  Tree tree;
  int k = 0;
  bool fig1 = false;
  std::string host_id;
  std::string tree_id;
};

// The instance of trial `index`, regenerated from the config alone.
TrialInstance make_trial_instance(const ExperimentConfig& cfg, int index);
TrialRecord run_trial(const ExperimentConfig& cfg, int index);
SweepResult run_sweep(const ExperimentConfig& cfg);

// Specialized embedders in order; the first found result is returned.
struct PipelineResult {
  std::vector<StageOutcome> stages;
  std::optional<EmbedOutcome> found;
};
PipelineResult run_pipeline(const Graph& g, const Tree& t, CutMode mode = CutMode::heuristic);

struct ExtremalReport {
  int k = 0;
  int host_min_degree = 0;
  int host_max_degree = 0;
  bool degrees_confirmed = false;  // delta = 2k/3 - 1 and Delta >= k
  std::string oracle_status;
  std::int64_t oracle_nodes = 0;
  bool impossibility_confirmed = false;
  int augmented_min_degree = 0;
  std::string augmented_method;
  bool augmented_embeds = false;
  bool confirmed() const { return degrees_confirmed && impossibility_confirmed && augmented_embeds; }
};

ExtremalReport verify_extremal(int k, std::int64_t budget = kDefaultOracleBudget);

enum class Mutation { none, split_two_forests_bound };

struct LedgerEntry {
  std::string module;
  std::string invariant;
  int trials = 0;
  int passed = 0;
  int failed = 0;
  std::string first_failure;
};

std::vector<LedgerEntry> property_suite(std::uint64_t seed, int trials,
                                        Mutation mutation = Mutation::none);

enum class ReportFormat { json, csv };

std::string report_json(const SweepResult& result);
std::string report_csv(const std::vector<TrialRecord>& records);
// Columns of report_csv, in order.
const std::vector<std::string>& csv_columns();
void emit_report(const SweepResult& result, ReportFormat format, const std::string& path);

std::string ledger_json(const std::vector<LedgerEntry>& ledger);
std::string extremal_json(const std::vector<ExtremalReport>& reports);

}  // namespace treebed
