#include "treebed/constructions.hpp"
#include "treebed/decomposition.hpp"
#include "treebed/embed.hpp"
#include "treebed/io.hpp"
#include "treebed/lab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace treebed;
using ojson = nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string format = "json";
  int exact_cap = 20;
  std::int64_t budget = kDefaultOracleBudget;
  std::string out;
};

void write_out(const Globals& g, const std::string& text) {
  if (g.out.empty()) std::cout << text;
  else save_text(g.out, text);
}

ojson set_json(const VertexSet& s) { return ojson(std::vector<Vertex>(s.begin(), s.end())); }

ojson outcome_json(const EmbedOutcome& o) {
  ojson j;
  j["status"] = to_string(o.status);
  j["method"] = o.method;
  j["nodes_explored"] = o.nodes_explored;
  if (o.embedding) j["map"] = o.embedding->map;
  else j["map"] = nullptr;
  return j;
}

ojson subtree_json(const Subtree& s) {
  ojson j;
  j["vertices"] = s.vertices;
  auto edges = ojson::array();
  for (const auto& [u, v] : s.edges) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

int run_gen(const Globals& gl, const std::string& family, int k, int n, int delta, int max_deg,
            int ell, int d, const std::string& alpha) {
  std::string text;
  if (family == "two-cliques-apex") text = write_edge_list(gen_two_cliques_apex(k).graph);
  else if (family == "three-branch") text = write_tree_json(gen_three_branch_tree(k));
  else if (family == "spider") text = write_tree_json(gen_spider(k, ell));
  else if (family == "bps") text = write_edge_list(gen_bps_alpha_host(k, parse_rational(alpha)).graph);
  else if (family == "clique-chain") text = write_edge_list(gen_clique_chain_apex(k, d).graph);
  else if (family == "complete-bipartite") text = write_edge_list(gen_complete_bipartite(k, n));
  else if (family == "path") text = write_tree_json(gen_path(n));
  else if (family == "random-tree") text = write_tree_json(gen_random_tree(n, max_deg, gl.seed));
  else if (family == "random-graph")
    text = write_edge_list(gen_random_graph_min_degree(n, delta, gl.seed, Rational(1, 10)));
  else if (family == "caterpillar")
    text = write_tree_json(gen_caterpillar(std::max(1, n - k), k, gl.seed, max_deg));
  else throw PreconditionViolated("unknown family '" + family + "'");
  write_out(gl, text);
  return 0;
}

int run_split(const Globals& gl, const std::string& path, const std::string& kind, int m, int v) {
  Tree t = load_tree(path);
  ojson j;
  j["kind"] = kind;
  if (kind == "two") {
    auto s = split_two_forests(t);
    j["pivot"] = s.pivot;
    j["f1"] = set_json(s.f1);
    j["f2"] = set_json(s.f2);
  } else if (kind == "three") {
    auto s = split_three_forests(t);
    j["pivot"] = s.pivot;
    j["f1"] = set_json(s.f1);
    j["f2"] = set_json(s.f2);
    j["f3"] = set_json(s.f3);
  } else if (kind == "subtree") {
    auto s = subtree_split(t, v, m);
    j["s1"] = subtree_json(s.s1);
    j["s2"] = subtree_json(s.s2);
    j["shared"] = s.shared;
  } else if (kind == "chain") {
    auto s = chain_split(t, m);
    j["s0"] = subtree_json(s.s0);
    auto others = ojson::array();
    for (const auto& o : s.others) others.push_back(subtree_json(o));
    j["others"] = std::move(others);
    j["attach_points"] = s.attach_points;
  } else if (kind == "even-odd") {
    auto s = even_odd_split(t);
    j["root"] = s.root;
    j["class1"] = s.class1;
    j["class2"] = s.class2;
    j["lhs1"] = to_string(s.lhs1);
    j["lhs2"] = to_string(s.lhs2);
    j["bound"] = to_string(s.bound);
  } else if (kind == "msf") {
    auto s = msf_decomposition(t);
    j["root"] = s.root;
    auto matching = ojson::array();
    for (const auto& [a, b] : s.matching) matching.push_back({a, b});
    j["matching"] = std::move(matching);
    j["s_tree"] = set_json(s.s_tree);
    j["f_forest"] = set_json(s.f_forest);
    j["steiner_size"] = s.steiner_size;
    j["p3_asserted"] = s.p3_asserted;
  } else {
    throw PreconditionViolated("unknown split kind '" + kind + "'");
  }
  write_out(gl, j.dump(2) + "\n");
  return 0;
}

int run_embed(const Globals& gl, const std::string& host_path, const std::string& tree_path,
              const std::string& method, int x) {
  Graph g = load_graph(host_path);
  Tree t = load_tree(tree_path);
  ojson j;
  if (method == "oracle") {
    OracleOptions opts;
    opts.budget = gl.budget;
    j = outcome_json(brute_force_embed(g, t, opts));
  } else if (method == "greedy") {
    j = outcome_json(greedy_embed(g, t, x));
  } else if (method == "pipeline") {
    auto p = run_pipeline(g, t);
    auto stages = ojson::array();
    for (const auto& s : p.stages) stages.push_back({{"stage", s.stage}, {"outcome", s.outcome}});
    if (p.found) j = outcome_json(*p.found);
    else j["status"] = "not_found";
    j["stages"] = std::move(stages);
  } else {
    throw PreconditionViolated("unknown method '" + method + "'");
  }
  write_out(gl, j.dump(2) + "\n");
  return 0;
}

int run_decompose(const Globals& gl, const std::string& host_path, int k, const std::string& c,
                  const std::string& rho, const std::string& mode) {
  Graph g = load_graph(host_path);
  RichParams p{parse_rational(c), parse_rational(rho), k};
  CutOptions cut;
  cut.exact_cap = gl.exact_cap;
  cut.seed = gl.seed;
  auto r = rich_decompose(g, p, mode == "exact" ? CutMode::exact : CutMode::heuristic, cut);
  ojson j;
  auto parts = ojson::array();
  for (const auto& s : r.parts) parts.push_back(set_json(s));
  j["parts"] = std::move(parts);
  j["uncovered"] = set_json(r.uncovered);
  j["coverage"] = to_string(r.coverage);
  j["heuristic"] = r.heuristic;
  write_out(gl, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treebed: tree embedding experiments under degree conditions"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--seed", gl.seed, "root seed");
  app.add_option("--format", gl.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--exact-cap", gl.exact_cap, "largest graph for exact cut enumeration");
  app.add_option("--budget", gl.budget, "oracle node budget");
  app.add_option("--out", gl.out, "output file (default stdout)");

  std::string family;
  int k = 6, n = 10, delta = 2, max_deg = 3, ell = 1, d = 2;
  std::string alpha = "1/4";
  auto* gen = app.add_subcommand("gen", "generate a host graph or tree");
  gen->add_option("family", family, "two-cliques-apex, three-branch, spider, bps, clique-chain, "
                                     "complete-bipartite, path, random-tree, random-graph, caterpillar")
      ->required();
  gen->add_option("-k", k, "edge parameter");
  gen->add_option("-n", n, "vertex count");
  gen->add_option("--delta", delta, "minimum degree");
  gen->add_option("--max-deg", max_deg, "maximum tree degree");
  gen->add_option("--ell", ell, "spider branches");
  gen->add_option("-d", d, "number of cliques");
  gen->add_option("--alpha", alpha, "alpha as p/q");

  std::string tree_path, host_path, kind = "two", method = "pipeline";
  int m = 1, v = 0, x = 0;
  auto* split = app.add_subcommand("split", "split a tree");
  split->add_option("tree", tree_path, "tree JSON file")->required();
  split->add_option("--kind", kind, "two, three, subtree, chain, even-odd, msf");
  split->add_option("-m", m, "size parameter");
  split->add_option("-v", v, "vertex for subtree splits");

  auto* embed = app.add_subcommand("embed", "embed a tree into a host");
  embed->add_option("host", host_path, "edge list file")->required();
  embed->add_option("tree", tree_path, "tree JSON file")->required();
  embed->add_option("--method", method, "oracle, greedy, pipeline");
  embed->add_option("-x", x, "image of the root for greedy");

  std::string c = "1/2", rho = "1/100", mode = "heuristic";
  auto* decompose = app.add_subcommand("decompose", "split a host into rich pieces");
  decompose->add_option("host", host_path, "edge list file")->required();
  decompose->add_option("-k", k, "tree size")->required();
  decompose->add_option("-c", c, "minimum degree factor");
  decompose->add_option("--rho", rho, "cut density");
  decompose->add_option("--mode", mode, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));

  std::vector<int> ks{6, 9, 12};
  auto* extremal = app.add_subcommand("verify-extremal", "check the two-cliques construction");
  extremal->add_option("-k", ks, "values of k (multiples of 3)");

  ExperimentConfig cfg;
  std::string tpl = "2k3", host_family = "random_min_degree", tree_family = "random", cfg_alpha = "1/4";
  auto* sweep = app.add_subcommand("sweep", "run a seeded experiment");
  sweep->add_option("--template", tpl, "2k3, alpha, k2_maxdeg, second_nbhd");
  sweep->add_option("--k-min", cfg.k_min);
  sweep->add_option("--k-max", cfg.k_max);
  sweep->add_option("--trials", cfg.trials);
  sweep->add_option("--tree-max-degree", cfg.tree_max_degree);
  sweep->add_option("--host-family", host_family);
  sweep->add_option("--tree-family", tree_family);
  sweep->add_option("--host-max-vertices", cfg.host_max_vertices);
  sweep->add_option("--min-degree-offset", cfg.min_degree_offset);
  sweep->add_option("--alpha", cfg_alpha);
  sweep->add_option("--threads", cfg.threads);
  sweep->add_flag("--wall-time", cfg.record_wall_time, "record per-trial wall time");

  int prop_trials = 100;
  std::string mutant = "none";
  auto* props = app.add_subcommand("props", "run the property suite");
  props->add_option("--trials", prop_trials);
  props->add_option("--mutant", mutant)->check(CLI::IsMember({"none", "split_two_forests_bound"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*gen) return run_gen(gl, family, k, n, delta, max_deg, ell, d, alpha);
    if (*split) return run_split(gl, tree_path, kind, m, v);
    if (*embed) return run_embed(gl, host_path, tree_path, method, x);
    if (*decompose) return run_decompose(gl, host_path, k, c, rho, mode);
    if (*extremal) {
      std::vector<ExtremalReport> reports;
      for (int kk : ks) reports.push_back(verify_extremal(kk, gl.budget));
      write_out(gl, extremal_json(reports));
      for (const auto& r : reports)
        if (!r.confirmed()) return 1;
      return 0;
    }
    if (*sweep) {
      cfg.conjecture = parse_template(tpl);
      cfg.host = parse_host_family(host_family);
      cfg.tree = parse_tree_family(tree_family);
      cfg.alpha = parse_rational(cfg_alpha);
      cfg.seed = gl.seed;
      cfg.oracle_budget = gl.budget;
      auto result = run_sweep(cfg);
      auto text = gl.format == "csv" ? report_csv(result.records) : report_json(result);
      write_out(gl, text);
      return result.summary.inconsistencies > 0 ? 1 : 0;
    }
    if (*props) {
      auto ledger = property_suite(
          gl.seed, prop_trials,
          mutant == "none" ? Mutation::none : Mutation::split_two_forests_bound);
      write_out(gl, ledger_json(ledger));
      for (const auto& e : ledger)
        if (e.failed > 0) return 1;
      return 0;
    }
  } catch (const PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
