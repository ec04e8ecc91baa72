#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "localpr/graph.hpp"

namespace localpr {

struct LoadedGraph {
  Graph graph;
  bool connected = true;
};

/// Reads "u v [w]" lines with dense 0-based ids. '#' starts a comment; blank
/// lines are skipped; duplicate edges are summed. Throws ParseError (with the
/// line number) on malformed lines, self-loops or non-positive weights, and
/// EmptyGraph when no edge is present.
LoadedGraph load_edge_list(std::istream& in);

/// Writes each undirected edge once as "u v w", sorted by (u, v). Weights are
/// printed with round-trip precision. A header comment records the node count
/// so trailing isolated nodes survive a reload.
void save_edge_list(std::ostream& out, const Graph& g);

/// Edge list whose endpoints are arbitrary string labels. Labels are assigned
/// dense ids in order of first appearance.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;  // labels[id]
  bool connected = true;
};

LabeledGraph load_labeled_edge_list(std::istream& in);

/// "id label" per line.
void save_label_map(std::ostream& out, const std::vector<std::string>& labels);

/// One node id per line, '#' comments allowed.
NodeSet load_node_set(std::istream& in);
void save_node_set(std::ostream& out, const NodeSet& s);

/// Shortest decimal text that parses back to exactly x.
std::string format_double(double x);

}  // namespace localpr
