#pragma once

#include "treebed/graph.hpp"
#include "treebed/tree.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace treebed {

class ParseError : public Error {
 public:
  using Error::Error;
};

// "n m" header, then one "u v" line per edge with u < v, edges sorted.
std::string write_edge_list(const Graph& g);
void write_edge_list(std::ostream& out, const Graph& g);
// Blank lines and '#' comments are skipped.
Graph read_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);

// {"n": int, "edges": [[u, v], ...], "root": int or null}, edges sorted.
std::string write_tree_json(const Tree& t);
Tree parse_tree_json(std::string_view text);

Graph load_graph(const std::string& path);
Tree load_tree(const std::string& path);
void save_text(const std::string& path, std::string_view text);

}  // namespace treebed
