#pragma once

#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "localpr/graph.hpp"

namespace localpr {

/// Node-indexed vector holding only nonzero values, sorted by node id.
class SparseVector {
 public:
  struct Entry {
    NodeId node;
    double value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseVector() = default;
  /// Zero values are dropped; entries are sorted. Duplicate nodes throw.
  explicit SparseVector(std::vector<Entry> entries);
  static SparseVector from_map(const std::unordered_map<NodeId, double>& m);
  static SparseVector from_dense(std::span<const double> dense);

  double operator[](NodeId v) const;
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::span<const Entry> entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  NodeSet support() const;
  double l1_norm() const;
  double linf_norm() const;
  /// sum_i d_i x_i
  double degree_weighted_sum(const Graph& g) const;
  bool is_nonnegative() const;

  std::vector<double> to_dense(NodeId n) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

/// max_i |a_i - b_i|
double linf_distance(const SparseVector& a, const SparseVector& b);

}  // namespace localpr
