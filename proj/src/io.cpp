#include "treebed/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace treebed {

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long a, b;
    if (!(fields >> a)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": expected two integers");
      continue;
    }
    std::string extra;
    if (!(fields >> b) || (fields >> extra))
      throw ParseError("line " + std::to_string(line_no) + ": expected two integers");
    if (!have_header) {
      if (a < 0 || b < 0) throw ParseError("negative header values");
      n = a;
      m = b;
      have_header = true;
      continue;
    }
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw ParseError("line " + std::to_string(line_no) + ": invalid edge");
    edges.emplace_back(static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b)));
  }
  if (!have_header) throw ParseError("missing \"n m\" header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError("header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  Graph g(static_cast<int>(n), edges);
  if (g.edge_count() != m) throw ParseError("duplicate edges");
  return g;
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_edge_list(in);
}

std::string write_tree_json(const Tree& t) {
  nlohmann::ordered_json j;
  j["n"] = t.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [u, v] : t.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  if (t.root()) j["root"] = *t.root();
  else j["root"] = nullptr;
  return j.dump();
}

Tree parse_tree_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::optional<Vertex> root;
    if (j.contains("root") && !j["root"].is_null()) root = j["root"].get<int>();
    return Tree(n, edges, root);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  } catch (const PreconditionViolated& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  }
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}
}  // namespace

Graph load_graph(const std::string& path) { return parse_edge_list(slurp(path)); }
Tree load_tree(const std::string& path) { return parse_tree_json(slurp(path)); }

void save_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace treebed
