#pragma once

#include "treedist/merge_tree.hpp"
#include "treedist/metric_tree.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace treedist {

/// Syntax error in a tree file; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

using ParsedTree = std::variant<MergeTree, MetricTree>;

namespace io_detail {

struct Token {
  std::string text;
  int column;
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

inline Rational parse_scalar(const Token& t, int line) {
  try {
    return Rational::parse(t.text);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, t.column, "expected a rational number, got '" + t.text + "'");
  }
}

}  // namespace io_detail

/// Parses the line-based tree format and validates the result.
///
///   mergetree              metrictree
///   node <id> <height>     node <id>
///   edge <child> <parent>  edge <id> <id> <length>
///
/// Node lines precede edge lines. Blank lines and lines starting with '#' are skipped.
inline ParsedTree parse_tree_text(const std::string& text) {
  using io_detail::Token;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  enum class Kind { None, Merge, Metric } kind = Kind::None;
  bool in_edges = false;
  std::vector<MergeNodeSpec> mnodes;
  std::vector<MergeEdgeSpec> medges;
  std::vector<std::string> tnodes;
  std::vector<MetricEdgeSpec> tedges;

  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto toks = io_detail::tokenize(raw);
    if (toks.empty() || toks.front().text.front() == '#') continue;

    if (kind == Kind::None) {
      if (toks.front().text == "mergetree")
        kind = Kind::Merge;
      else if (toks.front().text == "metrictree")
        kind = Kind::Metric;
      else
        throw ParseError(lineno, toks.front().column, "unknown tree kind '" + toks.front().text + "'");
      if (toks.size() > 1) throw ParseError(lineno, toks[1].column, "unexpected text after header");
      continue;
    }

    const Token& head = toks.front();
    auto expect = [&](std::size_t n) {
      if (toks.size() < n) throw ParseError(lineno, static_cast<int>(raw.size()) + 1, "missing field in '" + head.text + "' line");
      if (toks.size() > n) throw ParseError(lineno, toks[n].column, "unexpected trailing field '" + toks[n].text + "'");
    };
    if (head.text == "node") {
      if (in_edges) throw ParseError(lineno, head.column, "node line after edge lines");
      if (kind == Kind::Merge) {
        expect(3);
        mnodes.push_back({toks[1].text, io_detail::parse_scalar(toks[2], lineno)});
      } else {
        expect(2);
        tnodes.push_back(toks[1].text);
      }
    } else if (head.text == "edge") {
      in_edges = true;
      if (kind == Kind::Merge) {
        expect(3);
        medges.push_back({toks[1].text, toks[2].text});
      } else {
        expect(4);
        tedges.push_back({toks[1].text, toks[2].text, io_detail::parse_scalar(toks[3], lineno)});
      }
    } else {
      throw ParseError(lineno, head.column, "expected 'node' or 'edge', got '" + head.text + "'");
    }
  }
  if (kind == Kind::None) throw ParseError(lineno + 1, 1, "missing 'mergetree' or 'metrictree' header");
  if (kind == Kind::Merge) return validate_merge_tree(mnodes, medges);
  return validate_metric_tree(tnodes, tedges);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline ParsedTree parse_tree_file(const std::string& path) { return parse_tree_text(read_file(path)); }

inline std::string serialize(const MergeTree& t) {
  std::ostringstream os;
  os << "mergetree\n";
  for (const auto& n : t.node_specs()) os << "node " << n.id << ' ' << n.height << '\n';
  for (const auto& e : t.edge_specs()) os << "edge " << e.child << ' ' << e.parent << '\n';
  return os.str();
}

inline std::string serialize(const MetricTree& t) {
  std::ostringstream os;
  os << "metrictree\n";
  for (std::size_t v = 0; v < t.size(); ++v) os << "node " << t.id(static_cast<NodeIndex>(v)) << '\n';
  for (const auto& e : t.edges()) os << "edge " << e.u << ' ' << e.v << ' ' << e.length << '\n';
  return os.str();
}

inline std::string serialize(const ParsedTree& t) {
  return std::visit([](const auto& x) { return serialize(x); }, t);
}

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
inline std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

enum class TreeKind { Merge, Metric };

struct GenOptions {
  TreeKind kind = TreeKind::Merge;
  int n = 5;
  std::uint64_t seed = 1;
  Rational lo = 0;       // heights (merge) or lengths (metric)
  Rational hi = 8;
  int denominator = 1;   // sampled values lie on the grid lo + k / denominator
  int max_degree = 0;    // children per node (merge) or neighbours (metric); 0 = no limit
};

namespace io_detail {

// Platform-independent bounded draw, so a seed gives the same tree everywhere.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline std::vector<Rational> grid(const GenOptions& o) {
  if (o.denominator < 1) throw std::invalid_argument("generator: denominator must be >= 1");
  if (o.hi < o.lo) throw std::invalid_argument("generator: empty value range");
  std::vector<Rational> g;
  const Rational step(1, o.denominator);
  for (Rational v = o.lo; v <= o.hi; v += step) g.push_back(v);
  return g;
}

}  // namespace io_detail

/// Random merge tree. The shape comes from attaching each new node below a
/// random earlier node with spare degree; heights are then drawn top-down,
/// each strictly below the parent and high enough for the subtree underneath.
inline MergeTree generate_merge_tree(const GenOptions& o) {
  if (o.n < 1) throw std::invalid_argument("generator: n must be >= 1");
  const auto g = io_detail::grid(o);
  std::mt19937_64 rng(o.seed);
  const auto n = static_cast<std::size_t>(o.n);

  std::vector<std::size_t> parent(n, 0);
  std::vector<int> kids(n, 0);
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> open;
    for (std::size_t p = 0; p < k; ++p)
      if (o.max_degree == 0 || kids[p] < o.max_degree) open.push_back(p);
    if (open.empty()) throw std::invalid_argument("generator: degree limit leaves no room for node " + std::to_string(k));
    parent[k] = open[io_detail::draw(rng, open.size())];
    ++kids[parent[k]];
  }

  // Edges on the longest downward path; parents precede children.
  std::vector<std::size_t> below(n, 0);
  for (std::size_t k = n; k-- > 1;) below[parent[k]] = std::max(below[parent[k]], below[k] + 1);
  if (below[0] + 1 > g.size())
    throw std::invalid_argument("generator: height range too narrow for a tree of depth " + std::to_string(below[0]));

  std::vector<std::size_t> level(n);
  const std::size_t root_lo = std::max(g.size() / 2, below[0]);
  level[0] = root_lo + io_detail::draw(rng, g.size() - root_lo);
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t hi = level[parent[k]];  // exclusive
    level[k] = below[k] + io_detail::draw(rng, hi - below[k]);
  }

  std::vector<MergeNodeSpec> nodes;
  std::vector<MergeEdgeSpec> edges;
  for (std::size_t k = 0; k < n; ++k) {
    nodes.push_back({"v" + std::to_string(k), g[level[k]]});
    if (k > 0) edges.push_back({nodes[k].id, "v" + std::to_string(parent[k])});
  }
  return validate_merge_tree(nodes, edges);
}

/// Random metric tree by attaching each new node to a random earlier node.
inline MetricTree generate_metric_tree(const GenOptions& o) {
  if (o.n < 1) throw std::invalid_argument("generator: n must be >= 1");
  auto g = io_detail::grid(o);
  std::erase_if(g, [](const Rational& v) { return !(v > 0); });
  if (g.empty() && o.n > 1) throw std::invalid_argument("generator: no positive length in range");
  if (o.max_degree == 1 && o.n > 2) throw std::invalid_argument("generator: max degree 1 allows at most 2 nodes");
  std::mt19937_64 rng(o.seed);
  std::vector<std::string> nodes{"v0"};
  std::vector<MetricEdgeSpec> edges;
  std::vector<int> deg{0};
  for (int k = 1; k < o.n; ++k) {
    std::vector<std::size_t> open;
    for (std::size_t p = 0; p < nodes.size(); ++p)
      if (o.max_degree == 0 || deg[p] < o.max_degree) open.push_back(p);
    if (open.empty()) throw std::invalid_argument("generator: constraints leave no room for node " + std::to_string(k));
    std::size_t p = open[io_detail::draw(rng, open.size())];
    std::string id = "v" + std::to_string(k);
    edges.push_back({nodes[p], id, g[io_detail::draw(rng, g.size())]});
    nodes.push_back(id);
    deg.push_back(1);
    ++deg[p];
  }
  return validate_metric_tree(nodes, edges);
}

inline ParsedTree generate_random_tree(const GenOptions& o) {
  if (o.kind == TreeKind::Merge) return generate_merge_tree(o);
  return generate_metric_tree(o);
}

}  // namespace treedist
