#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <tuple>
#include <vector>

namespace localpr {

using NodeId = std::uint32_t;

/// Sorted set of unique node ids.
class NodeSet {
 public:
  NodeSet() = default;
  /// Sorts and deduplicates.
  explicit NodeSet(std::vector<NodeId> ids);
  NodeSet(std::initializer_list<NodeId> ids);

  static NodeSet range(NodeId first, NodeId last);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(NodeId v) const;
  bool is_subset_of(const NodeSet& other) const;

  NodeSet set_union(const NodeSet& other) const;
  NodeSet set_intersection(const NodeSet& other) const;
  NodeSet set_difference(const NodeSet& other) const;

  std::span<const NodeId> ids() const noexcept { return ids_; }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  NodeId front() const { return ids_.front(); }
  NodeId back() const { return ids_.back(); }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> ids_;
};

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

/// Immutable weighted undirected graph in compressed adjacency form.
///
/// Neighbor lists are sorted by id; every edge is stored in both directions
/// with the same weight. Degrees are weighted degrees.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Duplicate (u, v) pairs, in either orientation,
  /// are merged by summing weights. Throws InvalidArgument on self-loops,
  /// non-positive weights or ids >= num_nodes.
  static Graph from_edges(NodeId num_nodes, std::span<const Edge> edges);

  NodeId num_nodes() const noexcept { return static_cast<NodeId>(degrees_.size()); }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const double> weights(NodeId v) const {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  double degree(NodeId v) const { return degrees_[v]; }
  std::span<const double> degrees() const noexcept { return degrees_; }
  double total_volume() const noexcept { return total_volume_; }

  /// Weight of edge (u, v), or 0 when absent.
  double edge_weight(NodeId u, NodeId v) const;

  bool is_connected() const noexcept { return connected_; }

  /// Nodes reachable from `v`.
  NodeSet component_of(NodeId v) const;

  /// Subgraph induced by `nodes`, relabelled 0..|nodes|-1 in sorted order.
  Graph induced_subgraph(const NodeSet& nodes) const;

  /// All edges with u < v, in (u, v) order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return std::tie(a.offsets_, a.targets_, a.weights_) ==
           std::tie(b.offsets_, b.targets_, b.weights_);
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<double> degrees_;
  double total_volume_ = 0.0;
  bool connected_ = true;
};

double volume(const Graph& g, const NodeSet& b);

/// Total weight of edges with exactly one endpoint in `b`.
double cut(const Graph& g, const NodeSet& b);

/// cut(b) / min(vol(b), vol(V \ b)). Throws DegenerateSet when b is empty or
/// covers every node.
double conductance(const Graph& g, const NodeSet& b);

/// Nodes adjacent to some member of `b` (excluding `b` itself).
NodeSet neighborhood(const Graph& g, const NodeSet& b);

}  // namespace localpr
