#pragma once

// Text formats (PACE-style graphs, hypergraphs and tree decompositions) and
// the JSON documents for modified nice decompositions and run reports.
//
// Graph:        c <comment>        (optional, anywhere)
//               c grid n_1 ... n_d (written for grid graphs, restores the grid shape)
//               c multigraph       (parallel edges allowed)
//               p gr <n> <m>
//               <u> <v>            (m lines, 1-based)
// Hypergraph:   p hg <n> <m>
//               <v_1> ... <v_k>    (m lines, 1-based members)
// Decomposition: s td <bags> <max bag size> <n>
//               c root <id>        (optional; otherwise bag 1 is the root)
//               b <id> <v...>      (1-based ids)
//               <a> <b>            (tree edges between bag ids)

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "nice.hpp"
#include "tree_decomposition.hpp"

namespace ztdp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline std::size_t to_count(const Line& line, const std::string& tok) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (tok.empty() || tok[0] == '-') throw std::invalid_argument(tok);
    v = std::stoull(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected a non-negative integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line.number, "expected a non-negative integer, got '" + tok + "'");
  return static_cast<std::size_t>(v);
}

inline Vertex to_vertex(const Line& line, const std::string& tok, std::size_t n) {
  auto v = to_count(line, tok);
  if (v < 1 || v > n) throw ParseError(line.number, "vertex id " + tok + " outside 1.." + std::to_string(n));
  return static_cast<Vertex>(v - 1);
}

inline bool is_comment(const Line& line) { return line.tokens[0] == "c"; }

}  // namespace detail

inline void write_graph(std::ostream& out, const Graph& g) {
  if (g.grid()) {
    out << "c grid";
    for (auto len : g.grid()->lengths()) out << ' ' << len;
    out << '\n';
  }
  if (g.multiplicity() == EdgeMultiplicity::multigraph) out << "c multigraph\n";
  out << "p gr " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

inline Graph read_graph(std::istream& in) {
  auto lines = detail::tokenize(in);
  std::optional<std::size_t> n, m;
  std::optional<GridSpec> grid;
  auto mult = EdgeMultiplicity::simple;
  std::vector<Edge> edges;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (detail::is_comment(line)) {
      if (t.size() >= 3 && t[1] == "grid") {
        std::vector<std::size_t> lengths;
        for (std::size_t i = 2; i < t.size(); ++i) lengths.push_back(detail::to_count(line, t[i]));
        grid = GridSpec(lengths);
      } else if (t.size() == 2 && t[1] == "multigraph") {
        mult = EdgeMultiplicity::multigraph;
      }
      continue;
    }
    if (t[0] == "p") {
      if (n) throw ParseError(line.number, "second problem line");
      if (t.size() != 4 || t[1] != "gr") throw ParseError(line.number, "expected 'p gr <n> <m>'");
      n = detail::to_count(line, t[2]);
      m = detail::to_count(line, t[3]);
      continue;
    }
    if (!n) throw ParseError(line.number, "edge before the 'p gr' line");
    if (t.size() != 2) throw ParseError(line.number, "edge lines have two endpoints");
    edges.push_back({detail::to_vertex(line, t[0], *n), detail::to_vertex(line, t[1], *n)});
  }
  if (!n) throw ParseError(lines.empty() ? 0 : lines.back().number, "missing 'p gr' line");
  if (edges.size() != *m)
    throw ParseError(lines.back().number,
                     "header announces " + std::to_string(*m) + " edges, found " + std::to_string(edges.size()));
  Graph g(*n, std::move(edges), mult);
  if (grid) {
    Graph shaped = grid_graph(*grid);
    if (shaped == g) return shaped;
  }
  return g;
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& hg) {
  out << "p hg " << hg.universe_size() << ' ' << hg.edge_count() << '\n';
  for (const auto& e : hg.hyperedges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i] + 1;
    out << '\n';
  }
}

inline Hypergraph read_hypergraph(std::istream& in) {
  auto lines = detail::tokenize(in);
  std::optional<std::size_t> n, m;
  std::vector<std::vector<Vertex>> sets;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (detail::is_comment(line)) continue;
    if (t[0] == "p") {
      if (n) throw ParseError(line.number, "second problem line");
      if (t.size() != 4 || t[1] != "hg") throw ParseError(line.number, "expected 'p hg <n> <m>'");
      n = detail::to_count(line, t[2]);
      m = detail::to_count(line, t[3]);
      continue;
    }
    if (!n) throw ParseError(line.number, "set before the 'p hg' line");
    std::vector<Vertex> members;
    for (const auto& tok : t) members.push_back(detail::to_vertex(line, tok, *n));
    sets.push_back(std::move(members));
  }
  if (!n) throw ParseError(lines.empty() ? 0 : lines.back().number, "missing 'p hg' line");
  if (sets.size() != *m)
    throw ParseError(lines.back().number,
                     "header announces " + std::to_string(*m) + " sets, found " + std::to_string(sets.size()));
  return Hypergraph(*n, std::move(sets));
}

/// Kind of input file, from its problem line.
enum class InputKind { graph, hypergraph };

inline InputKind sniff_input(std::istream& in) {
  for (const auto& line : detail::tokenize(in))
    if (line.tokens[0] == "p" && line.tokens.size() >= 2) {
      if (line.tokens[1] == "gr") return InputKind::graph;
      if (line.tokens[1] == "hg") return InputKind::hypergraph;
      throw ParseError(line.number, "unknown problem type '" + line.tokens[1] + "'");
    }
  throw ParseError(0, "no problem line");
}

inline void write_td(std::ostream& out, const TreeDecomposition& td, std::size_t vertex_count) {
  std::size_t widest = 0;
  for (const auto& b : td.bags()) widest = std::max(widest, b.size());
  out << "s td " << td.size() << ' ' << widest << ' ' << vertex_count << '\n';
  out << "c root " << td.root() + 1 << '\n';
  for (std::size_t x = 0; x < td.size(); ++x) {
    out << "b " << x + 1;
    for (Vertex v : td.bag(x)) out << ' ' << v + 1;
    out << '\n';
  }
  for (std::size_t x = 0; x < td.size(); ++x)
    if (td.parent(x) != no_parent) out << td.parent(x) + 1 << ' ' << x + 1 << '\n';
}

struct TdFile {
  TreeDecomposition td;
  std::size_t vertex_count = 0;
};

inline TdFile read_td(std::istream& in) {
  auto lines = detail::tokenize(in);
  std::optional<std::size_t> count, n, root;
  std::vector<Bag> bags;
  std::vector<char> seen;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (detail::is_comment(line)) {
      if (t.size() == 3 && t[1] == "root") root = detail::to_count(line, t[2]);
      continue;
    }
    if (t[0] == "s") {
      if (count) throw ParseError(line.number, "second solution line");
      if (t.size() != 5 || t[1] != "td") throw ParseError(line.number, "expected 's td <bags> <width+1> <n>'");
      count = detail::to_count(line, t[2]);
      n = detail::to_count(line, t[4]);
      bags.assign(*count, {});
      seen.assign(*count, 0);
      continue;
    }
    if (!count) throw ParseError(line.number, "content before the 's td' line");
    if (t[0] == "b") {
      if (t.size() < 2) throw ParseError(line.number, "bag line without an id");
      auto id = detail::to_count(line, t[1]);
      if (id < 1 || id > *count) throw ParseError(line.number, "bag id " + t[1] + " out of range");
      if (seen[id - 1]) throw ParseError(line.number, "bag " + t[1] + " listed twice");
      seen[id - 1] = 1;
      for (std::size_t i = 2; i < t.size(); ++i) bags[id - 1].push_back(detail::to_vertex(line, t[i], *n));
      continue;
    }
    if (t.size() != 2) throw ParseError(line.number, "tree edge lines have two bag ids");
    auto a = detail::to_count(line, t[0]), b = detail::to_count(line, t[1]);
    if (a < 1 || a > *count || b < 1 || b > *count) throw ParseError(line.number, "tree edge references a missing bag");
    tree_edges.push_back({a - 1, b - 1});
  }
  if (!count) throw ParseError(0, "missing 's td' line");
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw ParseError(lines.back().number, "a bag line is missing");
  std::size_t r = root ? *root - 1 : 0;
  if (root && (*root < 1 || *root > *count)) throw ParseError(0, "root id out of range");
  try {
    return {root_tree(std::move(bags), tree_edges, r), *n};
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines.back().number, e.what());
  }
}

inline constexpr const char* nice_schema = "ztdp.nice/1";

inline nlohmann::json nice_to_json(const ModifiedNiceDecomposition& nice) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t x = 0; x < nice.size(); ++x) {
    const auto& n = nice.node(x);
    nlohmann::json j{{"id", x}, {"kind", kind_name(n.kind)}, {"bag", n.bag}, {"children", n.children}};
    if (n.kind == NodeKind::introduce_vertex || n.kind == NodeKind::forget_vertex) j["vertex"] = n.vertex;
    if (n.kind == NodeKind::introduce_edge || n.kind == NodeKind::aux_leaf) j["edge"] = n.edge;
    if (n.kind == NodeKind::aux_leaf) j["members"] = n.members;
    nodes.push_back(std::move(j));
  }
  return {{"schema", nice_schema}, {"universe", nice.universe_size()}, {"root", nice.root()}, {"nodes", nodes}};
}

inline ModifiedNiceDecomposition nice_from_json(const nlohmann::json& doc) {
  if (doc.value("schema", "") != nice_schema) throw std::invalid_argument("not a ztdp.nice/1 document");
  std::vector<NiceNode> nodes(doc.at("nodes").size());
  for (const auto& j : doc.at("nodes")) {
    auto id = j.at("id").get<std::size_t>();
    if (id >= nodes.size()) throw std::invalid_argument("node id out of range");
    NiceNode n;
    n.kind = kind_from_name(j.at("kind").get<std::string>());
    n.bag = j.at("bag").get<Bag>();
    n.children = j.at("children").get<std::vector<std::size_t>>();
    if (j.contains("vertex")) n.vertex = j["vertex"].get<Vertex>();
    if (j.contains("edge")) n.edge = j["edge"].get<std::size_t>();
    if (j.contains("members")) n.members = j["members"].get<std::vector<Vertex>>();
    nodes[id] = std::move(n);
  }
  return ModifiedNiceDecomposition(std::move(nodes), doc.at("root").get<std::size_t>(),
                                   doc.at("universe").get<std::size_t>());
}

inline nlohmann::json metrics_to_json(const DecompositionMetrics& m) {
  nlohmann::json j{{"width", m.width},
                   {"tree_depth_h", m.tree_depth_h},
                   {"node_count", m.node_count},
                   {"join_count", m.join_count},
                   {"leaf_count", m.leaf_count},
                   {"longest_path_nodes", m.longest_path_nodes}};
  j["max_forgets_on_path"] = m.max_forgets_on_path ? nlohmann::json(*m.max_forgets_on_path) : nlohmann::json(nullptr);
  return j;
}

template <class Path>
std::ifstream open_input(const Path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + std::string(path));
  return in;
}

}  // namespace ztdp
