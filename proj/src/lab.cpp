#include "treebed/lab.hpp"

#include "treebed/constructions.hpp"
#include "treebed/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace treebed {

using ojson = nlohmann::ordered_json;

const char* to_string(Template t) {
  switch (t) {
    case Template::two_thirds: return "2k3";
    case Template::alpha: return "alpha";
    case Template::k2_maxdeg: return "k2_maxdeg";
    case Template::second_nbhd: return "second_nbhd";
  }
  return "?";
}

const char* to_string(HostFamily f) {
  switch (f) {
    case HostFamily::random_min_degree: return "random_min_degree";
    case HostFamily::clique_mixture: return "clique_mixture";
    case HostFamily::bipartite_blend: return "bipartite_blend";
    case HostFamily::fig1_mix: return "fig1_mix";
  }
  return "?";
}

const char* to_string(TreeFamily f) {
  return f == TreeFamily::random ? "random" : "caterpillar";
}

const char* to_string(TrialVerdict v) {
  switch (v) {
    case TrialVerdict::embedded: return "embedded";
    case TrialVerdict::counterexample_candidate: return "counterexample-candidate";
    case TrialVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Template parse_template(const std::string& s) {
  for (auto t : {Template::two_thirds, Template::alpha, Template::k2_maxdeg, Template::second_nbhd})
    if (s == to_string(t)) return t;
  throw PreconditionViolated("unknown template '" + s + "'");
}

HostFamily parse_host_family(const std::string& s) {
  for (auto f : {HostFamily::random_min_degree, HostFamily::clique_mixture,
                 HostFamily::bipartite_blend, HostFamily::fig1_mix})
    if (s == to_string(f)) return f;
  throw PreconditionViolated("unknown host family '" + s + "'");
}

TreeFamily parse_tree_family(const std::string& s) {
  if (s == "random") return TreeFamily::random;
  if (s == "caterpillar") return TreeFamily::caterpillar;
  throw PreconditionViolated("unknown tree family '" + s + "'");
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.k_min < 1 || cfg.k_max < cfg.k_min) throw PreconditionViolated("empty k range");
  if (cfg.tree_max_degree < 2) throw PreconditionViolated("tree maximum degree must be at least 2");
  if (cfg.trials < 0) throw PreconditionViolated("negative trial count");
  if (cfg.host_max_vertices < 2) throw PreconditionViolated("host size bound too small");
  if (cfg.alpha <= 0 || cfg.alpha >= Rational(1, 3))
    throw PreconditionViolated("alpha must lie in (0, 1/3)");
  if (cfg.extra_edge_probability < 0 || cfg.extra_edge_probability > 1)
    throw PreconditionViolated("edge probability must lie in [0, 1]");
  if (cfg.oracle_budget < 1) throw PreconditionViolated("oracle budget must be positive");
  if (cfg.threads < 1) throw PreconditionViolated("need at least one worker thread");
}

namespace {

ojson config_object(const ExperimentConfig& cfg) {
  ojson j;
  j["conjecture"] = to_string(cfg.conjecture);
  j["k_min"] = cfg.k_min;
  j["k_max"] = cfg.k_max;
  j["tree_max_degree"] = cfg.tree_max_degree;
  j["host_family"] = to_string(cfg.host);
  j["host_max_vertices"] = cfg.host_max_vertices;
  j["min_degree_offset"] = cfg.min_degree_offset;
  j["alpha"] = to_string(cfg.alpha);
  j["extra_edge_probability"] = to_string(cfg.extra_edge_probability);
  j["tree_family"] = to_string(cfg.tree);
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["oracle_budget"] = cfg.oracle_budget;
  j["oracle_max_host"] = cfg.oracle_max_host;
  j["oracle_max_k"] = cfg.oracle_max_k;
  j["cut_mode"] = cfg.mode == CutMode::exact ? "exact" : "heuristic";
  return j;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

int ceil_int(const Rational& q) { return static_cast<int>(ceil_of(q)); }

}  // namespace

std::string config_json(const ExperimentConfig& cfg) { return config_object(cfg).dump(); }

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config_json(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

struct Requirement {
  Rational min_degree;
  Rational second;  // max degree, or the neighbourhood bound for second_nbhd
};

Requirement requirement(Template tpl, int k, int tree_max_degree, const Rational& alpha,
                        int offset) {
  Requirement r;
  switch (tpl) {
    case Template::two_thirds:
      r.min_degree = Rational((2 * k) / 3);
      r.second = Rational(k);
      break;
    case Template::alpha:
      r.min_degree = (1 + alpha) * k / 2;
      r.second = 2 * (1 - alpha) * k;
      break;
    case Template::k2_maxdeg:
      r.min_degree = Rational(k, 2);
      r.second = 2 * (1 - Rational(1, tree_max_degree)) * k;
      break;
    case Template::second_nbhd:
      r.min_degree = Rational(k, 2);
      r.second = Rational(4 * k, 3);
      break;
  }
  r.min_degree += offset;
  return r;
}

}  // namespace

TemplateCheck check_template(const Graph& g, Template tpl, int k, int tree_max_degree,
                             const Rational& alpha, int min_degree_offset) {
  auto req = requirement(tpl, k, tree_max_degree, alpha, min_degree_offset);
  TemplateCheck c;
  c.min_degree = g.vertex_count() ? g.min_degree() : 0;
  c.max_degree = g.vertex_count() ? g.max_degree() : 0;
  c.min_required = req.min_degree;
  c.max_required = req.second;
  const bool min_ok = g.vertex_count() > 0 && at_least(c.min_degree, req.min_degree);
  bool second_ok = false;
  if (tpl == Template::second_nbhd) {
    for (Vertex x = 0; x < g.vertex_count() && !second_ok; ++x) {
      if (!at_least(g.degree(x), req.second)) continue;
      if (at_least(second_neighbourhood(g, x).size(), req.second)) {
        second_ok = true;
        c.detail = "x=" + std::to_string(x);
      }
    }
  } else {
    second_ok = at_least(c.max_degree, req.second);
  }
  c.ok = min_ok && second_ok;
  if (!min_ok) c.detail = "minimum degree below " + to_string(req.min_degree);
  else if (!second_ok) c.detail = "no vertex meets " + to_string(req.second);
  return c;
}

namespace {

// Raise the degree of x to at least target with random new neighbours.
Graph raise_degree(const Graph& g, Vertex x, int target, Rng& rng) {
  std::vector<Vertex> free;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != x && !g.adjacent(x, v)) free.push_back(v);
  rng.shuffle(free.begin(), free.end());
  std::vector<Edge> extra;
  for (int i = 0; g.degree(x) + i < target && i < static_cast<int>(free.size()); ++i)
    extra.emplace_back(std::min(x, free[i]), std::max(x, free[i]));
  return add_edges(g, extra);
}

Graph sprinkle(const Graph& g, const Rational& p, Rng& rng) {
  if (p <= 0) return g;
  std::vector<Edge> extra;
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = u + 1; v < g.vertex_count(); ++v)
      if (!g.adjacent(u, v) && rng.chance(p.numerator(), p.denominator())) extra.emplace_back(u, v);
  return add_edges(g, extra);
}

Graph host_for(const ExperimentConfig& cfg, HostFamily family, int k, Rng& rng) {
  auto req = requirement(cfg.conjecture, k, cfg.tree_max_degree, cfg.alpha, cfg.min_degree_offset);
  const int delta = std::max(0, ceil_int(req.min_degree));
  const int big = ceil_int(req.second);
  const int floor_n = std::max(big + 1, delta + 2);
  switch (family) {
    case HostFamily::random_min_degree:
    case HostFamily::fig1_mix: {
      const int n = floor_n >= cfg.host_max_vertices ? floor_n
                                                     : rng.between(floor_n, cfg.host_max_vertices);
      Graph g = gen_random_graph_min_degree(n, delta, rng.next(), cfg.extra_edge_probability);
      return raise_degree(g, 0, big, rng);
    }
    case HostFamily::clique_mixture: {
      const int size = delta + 1;
      int cliques = 2;
      if (1 + 3 * size <= cfg.host_max_vertices && rng.chance(1, 2)) cliques = 3;
      const int n = 1 + cliques * size;
      std::vector<Edge> edges;
      for (int c = 0; c < cliques; ++c)
        for (int i = 0; i < size; ++i)
          for (int j = i + 1; j < size; ++j) edges.emplace_back(1 + c * size + i, 1 + c * size + j);
      Graph g(n, edges);
      g = sprinkle(g, cfg.extra_edge_probability, rng);
      return raise_degree(g, 0, std::max(big, delta), rng);
    }
    case HostFamily::bipartite_blend: {
      const int s = std::max(delta, 1), t = std::max(delta, 1) + static_cast<int>(rng.below(2));
      const int n = 1 + s + t;
      std::vector<Edge> edges;
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < t; ++j) edges.emplace_back(1 + i, 1 + s + j);
      Graph g(n, edges);
      g = sprinkle(g, cfg.extra_edge_probability, rng);
      return raise_degree(g, 0, std::max(big, delta), rng);
    }
  }
  throw PreconditionViolated("unknown host family");
}

Tree tree_for(const ExperimentConfig& cfg, int k, std::uint64_t seed) {
  if (cfg.tree == TreeFamily::random) return gen_random_tree(k + 1, cfg.tree_max_degree, seed);
  Rng rng(seed);
  const int room = cfg.tree_max_degree - 2;  // legs per inner spine vertex
  int lo = 1;
  while (lo < k + 1) {
    const int legs = k + 1 - lo;
    const int capacity = lo == 1 ? cfg.tree_max_degree : 2 * (room + 1) + (lo - 2) * room;
    if (legs <= capacity) break;
    ++lo;
  }
  const int spine = rng.between(lo, k + 1);
  return gen_caterpillar(spine, k + 1 - spine, rng.next(), cfg.tree_max_degree);
}

}  // namespace

TrialInstance make_trial_instance(const ExperimentConfig& cfg, int index) {
  TrialInstance inst;
  const int span = cfg.k_max - cfg.k_min + 1;
  inst.k = cfg.k_min + index % span;
  const std::uint64_t host_seed = derive_seed(cfg.seed, 1, index);
  const std::uint64_t tree_seed = derive_seed(cfg.seed, 2, index);
  Rng rng(host_seed);
  if (cfg.host == HostFamily::fig1_mix && inst.k % 3 == 0 && index % 4 == 0) {
    inst.fig1 = true;
    inst.host = gen_two_cliques_apex(inst.k).graph;
    inst.tree = gen_three_branch_tree(inst.k);
    inst.host_id = "fig1:k" + std::to_string(inst.k);
    inst.tree_id = "three_branch:k" + std::to_string(inst.k);
    return inst;
  }
  inst.host = host_for(cfg, cfg.host, inst.k, rng);
  inst.tree = tree_for(cfg, inst.k, tree_seed);
  inst.host_id = std::string(to_string(cfg.host)) + ":" + hex64(host_seed);
  inst.tree_id = std::string(to_string(cfg.tree)) + ":" + hex64(tree_seed);
  return inst;
}

namespace {

template <class F>
void attempt(PipelineResult& out, const std::string& stage, F&& run) {
  if (out.found) return;
  StageOutcome s{stage, "not_applicable", ""};
  try {
    if (auto r = run()) {
      if (r->status == EmbedStatus::found) {
        s.outcome = "found";
        s.detail = r->method;
        out.found = std::move(*r);
      } else {
        s.outcome = "not_found";
      }
    }
  } catch (const PreconditionViolated& e) {
    s.detail = e.what();
  } catch (const NotFound& e) {
    s.outcome = "not_found";
    s.detail = e.stage();
  } catch (const PostconditionViolated& e) {
    s.outcome = "failed";
    s.detail = e.what();
  } catch (const Error& e) {
    s.outcome = "not_found";
    s.detail = e.what();
  }
  out.stages.push_back(std::move(s));
}

VertexSet lift_set(const InducedSubgraph& sub, const VertexSet& local, int n) {
  std::vector<Vertex> out;
  for (Vertex v : local) out.push_back(sub.to_parent[v]);
  std::sort(out.begin(), out.end());
  return VertexSet(n, std::move(out));
}

}  // namespace

PipelineResult run_pipeline(const Graph& g, const Tree& t, CutMode mode) {
  PipelineResult out;
  const int n = g.vertex_count();
  if (n == 0 || t.vertex_count() > n) {
    out.stages.push_back({"pipeline", "not_applicable", "host smaller than tree"});
    return out;
  }
  Vertex x = 0;
  for (Vertex v = 1; v < n; ++v)
    if (g.degree(v) > g.degree(x)) x = v;
  std::vector<Vertex> rest_members;
  for (Vertex v = 0; v < n; ++v)
    if (v != x) rest_members.push_back(v);
  const VertexSet rest(n, rest_members);
  auto comps = connected_components(g, rest);

  attempt(out, "greedy", [&]() -> std::optional<EmbedOutcome> { return greedy_embed(g, t, x); });

  attempt(out, "apex_split", [&]() -> std::optional<EmbedOutcome> {
    if (comps.size() < 2) throw PreconditionViolated("g - x is connected");
    std::optional<std::string> last;
    for (std::size_t i = 0; i < comps.size() && i < 8; ++i) {
      auto others = set_difference(rest, comps[i]);
      try {
        return apex_split_embed(g, x, comps[i], others, t);
      } catch (const PreconditionViolated& e) {
        last = e.what();
      }
    }
    throw PreconditionViolated(*last);
  });

  attempt(out, "bipartite_apex", [&]() -> std::optional<EmbedOutcome> {
    auto sub = induced_subgraph(g, rest);
    auto parts = bipartition(sub.graph);
    if (!parts) throw PreconditionViolated("g - x is not bipartite");
    return bipartite_apex_embed(g, x, lift_set(sub, parts->first, n),
                                lift_set(sub, parts->second, n), t);
  });

  // a sparse cut of g - x supplies the two sides for the remaining stages
  std::optional<std::pair<VertexSet, VertexSet>> sides;
  if (rest.size() >= 2) {
    auto sub = induced_subgraph(g, rest);
    CutMode m = mode == CutMode::exact && sub.graph.vertex_count() <= 20 ? CutMode::exact
                                                                          : CutMode::heuristic;
    auto w = cut_density(sub.graph, m);
    sides.emplace(lift_set(sub, w.side_a, n), lift_set(sub, w.side_b, n));
  }

  attempt(out, "via_path", [&]() -> std::optional<EmbedOutcome> {
    if (!sides) throw PreconditionViolated("no cut available");
    std::optional<std::string> last = "no crossing edge between the sides";
    for (int flip = 0; flip < 2; ++flip) {
      const VertexSet& a_side = flip ? sides->second : sides->first;
      const VertexSet& b_side = flip ? sides->first : sides->second;
      int tried = 0;
      for (Vertex a : a_side) {
        for (Vertex b : g.neighbours(a)) {
          if (!b_side.contains(b) || tried >= 4) continue;
          ++tried;
          try {
            return embed_via_path(g, x, a_side, b_side, b_side, a, b, t);
          } catch (const PreconditionViolated& e) {
            last = e.what();
          }
        }
      }
    }
    throw PreconditionViolated(*last);
  });

  attempt(out, "matching_forest", [&]() -> std::optional<EmbedOutcome> {
    if (!sides) throw PreconditionViolated("no cut available");
    std::optional<std::string> last;
    for (int flip = 0; flip < 2; ++flip) {
      const VertexSet& core = flip ? sides->second : sides->first;
      const VertexSet& outside = flip ? sides->first : sides->second;
      auto outer = connected_components(g, set_union(outside, VertexSet(n, {x})));
      std::vector<Portal> portals;
      for (Vertex c : core)
        for (Vertex f : g.neighbours(c))
          for (const auto& comp : outer)
            if (comp.contains(f)) portals.push_back({c, f, comp});
      try {
        return matching_forest_embed(g, core, portals, t);
      } catch (const PreconditionViolated& e) {
        last = e.what();
      }
    }
    throw PreconditionViolated(*last);
  });
  return out;
}

TrialRecord run_trial(const ExperimentConfig& cfg, int index) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord r;
  r.index = index;
  r.config_hash = hex64(config_hash(cfg));
  r.host_distribution = to_string(cfg.host);
  try {
    auto inst = make_trial_instance(cfg, index);
    r.k = inst.k;
    r.host_id = inst.host_id;
    r.tree_id = inst.tree_id;
    r.fig1_instance = inst.fig1;
    if (inst.fig1) r.host_distribution = "fig1";
    r.host_vertices = inst.host.vertex_count();
    r.host_edges = inst.host.edge_count();
    r.tree_max_degree = inst.tree.max_degree();
    r.degree_check = check_template(inst.host, cfg.conjecture, inst.k, cfg.tree_max_degree,
                                    cfg.alpha, cfg.min_degree_offset);
    if (!r.degree_check.ok) {
      r.skipped = true;
    } else {
      auto pipe = run_pipeline(inst.host, inst.tree, cfg.mode);
      r.pipeline = pipe.stages;
      if (pipe.found) r.pipeline_method = pipe.found->method;
      const bool in_envelope =
          inst.host.vertex_count() <= cfg.oracle_max_host && inst.k <= cfg.oracle_max_k;
      bool oracle_found = false, oracle_exhaustive_no = false;
      if (in_envelope) {
        OracleOptions opts;
        opts.budget = cfg.oracle_budget;
        auto o = brute_force_embed(inst.host, inst.tree, opts);
        r.oracle_status = to_string(o.status);
        r.oracle_nodes = o.nodes_explored;
        oracle_found = o.status == EmbedStatus::found;
        oracle_exhaustive_no = o.status == EmbedStatus::not_found;
      } else {
        r.oracle_status = "outside_envelope";
      }
      if (pipe.found && oracle_exhaustive_no) r.consistent = false;
      if (pipe.found || oracle_found) r.verdict = TrialVerdict::embedded;
      else if (oracle_exhaustive_no) r.verdict = TrialVerdict::counterexample_candidate;
      else r.verdict = TrialVerdict::inconclusive;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    r.verdict = TrialVerdict::inconclusive;
    // an embedding that failed its own certification is a soundness failure
    if (dynamic_cast<const std::logic_error*>(&e)) r.consistent = false;
  }
  if (cfg.record_wall_time)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return r;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  SweepResult out;
  out.config = cfg;
  out.records.resize(cfg.trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cfg.trials; i = next++) out.records[i] = run_trial(cfg, i);
  };
  const int workers = std::min(cfg.threads, std::max(1, cfg.trials));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  auto& s = out.summary;
  s.trials = cfg.trials;
  for (const auto& r : out.records) {
    if (!r.error.empty()) ++s.errors;
    if (!r.consistent) ++s.inconsistencies;
    if (r.skipped) {
      ++s.skipped;
      continue;
    }
    switch (r.verdict) {
      case TrialVerdict::embedded: ++s.embedded; break;
      case TrialVerdict::counterexample_candidate: ++s.counterexample_candidates; break;
      case TrialVerdict::inconclusive: ++s.inconclusive; break;
    }
  }
  return out;
}

ExtremalReport verify_extremal(int k, std::int64_t budget) {
  if (k < 3 || k % 3 != 0) throw PreconditionViolated("verify_extremal needs k divisible by 3");
  ExtremalReport rep;
  rep.k = k;
  auto host = gen_two_cliques_apex(k);
  auto tree = gen_three_branch_tree(k);
  rep.host_min_degree = host.graph.min_degree();
  rep.host_max_degree = host.graph.max_degree();
  rep.degrees_confirmed = rep.host_min_degree == 2 * k / 3 - 1 && rep.host_max_degree >= k;

  OracleOptions opts;
  opts.budget = budget;
  auto o = brute_force_embed(host.graph, tree, opts);
  rep.oracle_status = to_string(o.status);
  rep.oracle_nodes = o.nodes_explored;
  if (o.status == EmbedStatus::budget_exhausted)
    throw OracleBudget("oracle budget exhausted on the extremal host for k=" + std::to_string(k));
  rep.impossibility_confirmed = o.status == EmbedStatus::not_found;

  auto bigger = gen_two_cliques_apex_sized(2 * k / 3);
  rep.augmented_min_degree = bigger.graph.min_degree();
  auto pipe = run_pipeline(bigger.graph, tree);
  if (pipe.found) {
    rep.augmented_method = pipe.found->method;
    rep.augmented_embeds = true;
  } else {
    auto again = brute_force_embed(bigger.graph, tree, opts);
    if (again.status == EmbedStatus::budget_exhausted)
      throw OracleBudget("oracle budget exhausted on the augmented host");
    rep.augmented_method = again.method;
    rep.augmented_embeds = again.status == EmbedStatus::found;
  }
  rep.augmented_embeds = rep.augmented_embeds && rep.augmented_min_degree == (2 * k) / 3;
  return rep;
}

namespace {

ojson record_object(const TrialRecord& r) {
  ojson j;
  j["index"] = r.index;
  j["config_hash"] = r.config_hash;
  j["host_id"] = r.host_id;
  j["tree_id"] = r.tree_id;
  j["host_distribution"] = r.host_distribution;
  j["k"] = r.k;
  j["host_vertices"] = r.host_vertices;
  j["host_edges"] = r.host_edges;
  j["tree_max_degree"] = r.tree_max_degree;
  j["fig1_instance"] = r.fig1_instance;
  ojson d;
  d["ok"] = r.degree_check.ok;
  d["min_degree"] = r.degree_check.min_degree;
  d["max_degree"] = r.degree_check.max_degree;
  d["min_required"] = to_string(r.degree_check.min_required);
  d["second_required"] = to_string(r.degree_check.max_required);
  d["detail"] = r.degree_check.detail;
  j["degree_check"] = std::move(d);
  j["skipped"] = r.skipped;
  auto stages = ojson::array();
  for (const auto& s : r.pipeline) {
    ojson o;
    o["stage"] = s.stage;
    o["outcome"] = s.outcome;
    o["detail"] = s.detail;
    stages.push_back(std::move(o));
  }
  j["pipeline"] = std::move(stages);
  j["pipeline_method"] = r.pipeline_method;
  j["oracle_status"] = r.oracle_status;
  j["oracle_nodes"] = r.oracle_nodes;
  j["verdict"] = to_string(r.verdict);
  j["consistent"] = r.consistent;
  j["error"] = r.error;
  if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_json(const SweepResult& result) {
  ojson j;
  j["schema"] = "treebed/1";
  auto cfg = config_object(result.config);
  cfg["hash"] = hex64(config_hash(result.config));
  j["config"] = std::move(cfg);
  auto records = ojson::array();
  for (const auto& r : result.records) records.push_back(record_object(r));
  j["records"] = std::move(records);
  ojson s;
  s["trials"] = result.summary.trials;
  s["skipped"] = result.summary.skipped;
  s["embedded"] = result.summary.embedded;
  s["counterexample_candidates"] = result.summary.counterexample_candidates;
  s["inconclusive"] = result.summary.inconclusive;
  s["inconsistencies"] = result.summary.inconsistencies;
  s["errors"] = result.summary.errors;
  j["summary"] = std::move(s);
  return j.dump(2) + "\n";
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "index",          "config_hash",  "host_id",        "tree_id",       "host_distribution",
      "k",              "host_vertices", "host_edges",    "tree_max_degree", "fig1_instance",
      "template_ok",    "min_degree",   "max_degree",     "skipped",       "pipeline_method",
      "oracle_status",  "oracle_nodes", "verdict",        "consistent",    "error"};
  return columns;
}

std::string report_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : records) {
    out << r.index << ',' << r.config_hash << ',' << csv_field(r.host_id) << ','
        << csv_field(r.tree_id) << ',' << r.host_distribution << ',' << r.k << ','
        << r.host_vertices << ',' << r.host_edges << ',' << r.tree_max_degree << ','
        << (r.fig1_instance ? 1 : 0) << ',' << (r.degree_check.ok ? 1 : 0) << ','
        << r.degree_check.min_degree << ',' << r.degree_check.max_degree << ','
        << (r.skipped ? 1 : 0) << ',' << csv_field(r.pipeline_method) << ',' << r.oracle_status
        << ',' << r.oracle_nodes << ',' << to_string(r.verdict) << ',' << (r.consistent ? 1 : 0)
        << ',' << csv_field(r.error) << '\n';
  }
  return out.str();
}

void emit_report(const SweepResult& result, ReportFormat format, const std::string& path) {
  const std::string text =
      format == ReportFormat::json ? report_json(result) : report_csv(result.records);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error("write to " + path + " failed");
}

std::string ledger_json(const std::vector<LedgerEntry>& ledger) {
  ojson j;
  j["schema"] = "treebed/1";
  auto rows = ojson::array();
  for (const auto& e : ledger) {
    ojson o;
    o["module"] = e.module;
    o["invariant"] = e.invariant;
    o["trials"] = e.trials;
    o["passed"] = e.passed;
    o["failed"] = e.failed;
    o["first_failure"] = e.first_failure;
    rows.push_back(std::move(o));
  }
  j["ledger"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string extremal_json(const std::vector<ExtremalReport>& reports) {
  ojson j;
  j["schema"] = "treebed/1";
  auto rows = ojson::array();
  for (const auto& r : reports) {
    ojson o;
    o["k"] = r.k;
    o["host_min_degree"] = r.host_min_degree;
    o["host_max_degree"] = r.host_max_degree;
    o["degrees_confirmed"] = r.degrees_confirmed;
    o["oracle_status"] = r.oracle_status;
    o["oracle_nodes"] = r.oracle_nodes;
    o["impossibility_confirmed"] = r.impossibility_confirmed;
    o["augmented_min_degree"] = r.augmented_min_degree;
    o["augmented_method"] = r.augmented_method;
    o["augmented_embeds"] = r.augmented_embeds;
    o["confirmed"] = r.confirmed();
    rows.push_back(std::move(o));
  }
  j["extremal"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace treebed
