#include "localpr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iterator>
#include <string>

#include "localpr/errors.hpp"

namespace localpr {

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}

NodeSet NodeSet::range(NodeId first, NodeId last) {
  std::vector<NodeId> ids;
  ids.reserve(last > first ? last - first : 0);
  for (NodeId v = first; v < last; ++v) ids.push_back(v);
  NodeSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool NodeSet::contains(NodeId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

NodeSet NodeSet::set_union(const NodeSet& other) const {
  NodeSet out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out.ids_));
  return out;
}

NodeSet NodeSet::set_intersection(const NodeSet& other) const {
  NodeSet out;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out.ids_));
  return out;
}

NodeSet NodeSet::set_difference(const NodeSet& other) const {
  NodeSet out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                      std::back_inserter(out.ids_));
  return out;
}

Graph Graph::from_edges(NodeId num_nodes, std::span<const Edge> edges) {
  struct Half {
    NodeId from;
    NodeId to;
    double w;
  };
  std::vector<Half> halves;
  halves.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw InvalidArgument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") references a node >= " + std::to_string(num_nodes));
    }
    if (e.u == e.v) throw InvalidArgument("self-loop at node " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidArgument("edge weight must be positive and finite");
    }
    halves.push_back({e.u, e.v, e.weight});
    halves.push_back({e.v, e.u, e.weight});
  }
  std::stable_sort(halves.begin(), halves.end(), [](const Half& a, const Half& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });

  Graph g;
  g.offsets_.assign(std::size_t{num_nodes} + 1, 0);
  g.degrees_.assign(num_nodes, 0.0);
  g.targets_.reserve(halves.size());
  g.weights_.reserve(halves.size());
  for (std::size_t i = 0; i < halves.size();) {
    const Half& h = halves[i];
    // Stable order: both endpoints sum duplicates in input order, so the two
    // stored copies of a weight are bit-identical.
    double w = 0.0;
    std::size_t j = i;
    for (; j < halves.size() && halves[j].from == h.from && halves[j].to == h.to; ++j) {
      w += halves[j].w;
    }
    g.targets_.push_back(h.to);
    g.weights_.push_back(w);
    ++g.offsets_[h.from + 1];
    i = j;
  }
  for (NodeId v = 0; v < num_nodes; ++v) g.offsets_[v + 1] += g.offsets_[v];
  for (NodeId v = 0; v < num_nodes; ++v) {
    double d = 0.0;
    for (double w : g.weights(v)) d += w;
    g.degrees_[v] = d;
    g.total_volume_ += d;
  }
  g.connected_ = num_nodes == 0 || g.component_of(0).size() == num_nodes;
  return g;
}

double Graph::edge_weight(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0.0;
  return weights_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

NodeSet Graph::component_of(NodeId v) const {
  std::vector<char> seen(num_nodes(), 0);
  std::vector<NodeId> order{v};
  seen[v] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId u : neighbors(order[head])) {
      if (!seen[u]) {
        seen[u] = 1;
        order.push_back(u);
      }
    }
  }
  return NodeSet(std::move(order));
}

Graph Graph::induced_subgraph(const NodeSet& nodes) const {
  std::vector<Edge> sub;
  const auto ids = nodes.ids();
  for (std::size_t a = 0; a < ids.size(); ++a) {
    auto nb = neighbors(ids[a]);
    auto ws = weights(ids[a]);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      if (nb[t] <= ids[a]) continue;
      auto it = std::lower_bound(ids.begin(), ids.end(), nb[t]);
      if (it != ids.end() && *it == nb[t]) {
        sub.push_back({static_cast<NodeId>(a), static_cast<NodeId>(it - ids.begin()), ws[t]});
      }
    }
  }
  return from_edges(static_cast<NodeId>(ids.size()), sub);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    auto nb = neighbors(u);
    auto ws = weights(u);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      if (nb[t] > u) out.push_back({u, nb[t], ws[t]});
    }
  }
  return out;
}

namespace {

void check_members(const Graph& g, const NodeSet& b) {
  if (!b.empty() && b.back() >= g.num_nodes()) {
    throw InvalidArgument("node set references node " + std::to_string(b.back()) +
                          " >= " + std::to_string(g.num_nodes()));
  }
}

}  // namespace

double volume(const Graph& g, const NodeSet& b) {
  check_members(g, b);
  double vol = 0.0;
  for (NodeId v : b) vol += g.degree(v);
  return vol;
}

double cut(const Graph& g, const NodeSet& b) {
  check_members(g, b);
  double c = 0.0;
  for (NodeId v : b) {
    auto nb = g.neighbors(v);
    auto ws = g.weights(v);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      if (!b.contains(nb[t])) c += ws[t];
    }
  }
  return c;
}

double conductance(const Graph& g, const NodeSet& b) {
  if (b.empty()) throw DegenerateSet("conductance of the empty set");
  if (b.size() >= g.num_nodes()) throw DegenerateSet("conductance of the full vertex set");
  const double vol = volume(g, b);
  const double denom = std::min(vol, g.total_volume() - vol);
  if (!(denom > 0.0)) throw DegenerateSet("set or its complement has zero volume");
  return cut(g, b) / denom;
}

NodeSet neighborhood(const Graph& g, const NodeSet& b) {
  check_members(g, b);
  std::vector<NodeId> out;
  for (NodeId v : b) {
    for (NodeId u : g.neighbors(v)) {
      if (!b.contains(u)) out.push_back(u);
    }
  }
  return NodeSet(std::move(out));
}

}  // namespace localpr
