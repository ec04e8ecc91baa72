#include "localpr/sparse_vector.hpp"

#include <algorithm>
#include <cmath>

#include "localpr/errors.hpp"

namespace localpr {

SparseVector::SparseVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::erase_if(entries_, [](const Entry& e) { return e.value == 0.0; });
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.node < b.node; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].node == entries_[i - 1].node) {
      throw InvalidArgument("duplicate node " + std::to_string(entries_[i].node) +
                            " in sparse vector");
    }
  }
}

SparseVector SparseVector::from_map(const std::unordered_map<NodeId, double>& m) {
  std::vector<Entry> entries;
  entries.reserve(m.size());
  for (const auto& [node, value] : m) entries.push_back({node, value});
  return SparseVector(std::move(entries));
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) entries.push_back({static_cast<NodeId>(i), dense[i]});
  }
  return SparseVector(std::move(entries));
}

double SparseVector::operator[](NodeId v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, NodeId id) { return e.node < id; });
  return it != entries_.end() && it->node == v ? it->value : 0.0;
}

NodeSet SparseVector::support() const {
  std::vector<NodeId> ids;
  ids.reserve(entries_.size());
  for (const Entry& e : entries_) ids.push_back(e.node);
  return NodeSet(std::move(ids));
}

double SparseVector::l1_norm() const {
  double s = 0.0;
  for (const Entry& e : entries_) s += std::abs(e.value);
  return s;
}

double SparseVector::linf_norm() const {
  double s = 0.0;
  for (const Entry& e : entries_) s = std::max(s, std::abs(e.value));
  return s;
}

double SparseVector::degree_weighted_sum(const Graph& g) const {
  double s = 0.0;
  for (const Entry& e : entries_) s += g.degree(e.node) * e.value;
  return s;
}

bool SparseVector::is_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.value >= 0.0; });
}

std::vector<double> SparseVector::to_dense(NodeId n) const {
  std::vector<double> out(n, 0.0);
  for (const Entry& e : entries_) {
    if (e.node >= n) throw InvalidArgument("sparse vector entry beyond dense length");
    out[e.node] = e.value;
  }
  return out;
}

double linf_distance(const SparseVector& a, const SparseVector& b) {
  double d = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->node < ib->node)) {
      d = std::max(d, std::abs(ia->value));
      ++ia;
    } else if (ia == a.end() || ib->node < ia->node) {
      d = std::max(d, std::abs(ib->value));
      ++ib;
    } else {
      d = std::max(d, std::abs(ia->value - ib->value));
      ++ia;
      ++ib;
    }
  }
  return d;
}

}  // namespace localpr
