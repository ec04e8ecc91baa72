#include "localpr/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "localpr/errors.hpp"

namespace localpr {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) ++i;
    std::size_t j = i;
    while (j < line.size() && !(line[j] == ' ' || line[j] == '\t' || line[j] == '\r' || line[j] == ',')) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

NodeId parse_id(std::string_view tok, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "invalid node id '" + std::string(tok) + "'");
  }
  if (v >= std::numeric_limits<NodeId>::max()) {
    throw ParseError(line_no, "node id out of range '" + std::string(tok) + "'");
  }
  return static_cast<NodeId>(v);
}

double parse_weight(std::string_view tok, std::size_t line_no) {
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(w)) {
    throw ParseError(line_no, "invalid weight '" + std::string(tok) + "'");
  }
  if (!(w > 0.0)) throw ParseError(line_no, "edge weight must be positive");
  return w;
}

// Splits off a '#' comment. Returns the data part; `comment` receives the rest.
std::string_view strip_comment(std::string_view line, std::string_view& comment) {
  const auto hash = line.find('#');
  if (hash == std::string_view::npos) {
    comment = {};
    return line;
  }
  comment = line.substr(hash + 1);
  return line.substr(0, hash);
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), ptr);
}

LoadedGraph load_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  NodeId n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view comment;
    auto data = strip_comment(line, comment);
    if (!comment.empty()) {
      auto ctoks = tokenize(comment);
      if (ctoks.size() == 2 && ctoks[0] == "nodes") {
        n = std::max(n, parse_id(ctoks[1], line_no));
      }
    }
    auto toks = tokenize(data);
    if (toks.empty()) continue;
    if (toks.size() < 2 || toks.size() > 3) {
      throw ParseError(line_no, "expected 'u v [w]', got " + std::to_string(toks.size()) + " fields");
    }
    const NodeId u = parse_id(toks[0], line_no);
    const NodeId v = parse_id(toks[1], line_no);
    const double w = toks.size() == 3 ? parse_weight(toks[2], line_no) : 1.0;
    if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
    edges.push_back({u, v, w});
    n = std::max({n, static_cast<NodeId>(u + 1), static_cast<NodeId>(v + 1)});
  }
  if (edges.empty()) throw EmptyGraph();
  LoadedGraph out{Graph::from_edges(n, edges), true};
  out.connected = out.graph.is_connected();
  return out;
}

void save_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.num_nodes() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
  }
}

LabeledGraph load_labeled_edge_list(std::istream& in) {
  LabeledGraph out;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  auto id_of = [&](std::string_view label) {
    auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<NodeId>(out.labels.size()));
    if (inserted) out.labels.emplace_back(label);
    return it->second;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view comment;
    auto toks = tokenize(strip_comment(line, comment));
    if (toks.empty()) continue;
    if (toks.size() < 2 || toks.size() > 3) {
      throw ParseError(line_no, "expected 'u v [w]', got " + std::to_string(toks.size()) + " fields");
    }
    const double w = toks.size() == 3 ? parse_weight(toks[2], line_no) : 1.0;
    if (toks[0] == toks[1]) throw ParseError(line_no, "self-loop at '" + std::string(toks[0]) + "'");
    const NodeId u = id_of(toks[0]);
    const NodeId v = id_of(toks[1]);
    edges.push_back({u, v, w});
  }
  if (edges.empty()) throw EmptyGraph();
  out.graph = Graph::from_edges(static_cast<NodeId>(out.labels.size()), edges);
  out.connected = out.graph.is_connected();
  return out;
}

void save_label_map(std::ostream& out, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ' ' << labels[i] << '\n';
}

NodeSet load_node_set(std::istream& in) {
  std::vector<NodeId> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view comment;
    for (auto tok : tokenize(strip_comment(line, comment))) ids.push_back(parse_id(tok, line_no));
  }
  return NodeSet(std::move(ids));
}

void save_node_set(std::ostream& out, const NodeSet& s) {
  for (NodeId v : s) out << v << '\n';
}

}  // namespace localpr
