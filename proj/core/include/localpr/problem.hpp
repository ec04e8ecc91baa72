#pragma once

#include <span>
#include <vector>

#include "localpr/graph.hpp"
#include "localpr/sparse_vector.hpp"

namespace localpr {

struct SeedMass {
  NodeId node;
  double mass;
};

/// Seed distribution s: nonnegative masses summing to one.
class SeedVector {
 public:
  SeedVector() = default;
  /// Throws InvalidArgument if any mass is negative or the sum is not 1
  /// (to 1e-12).
  explicit SeedVector(std::vector<SeedMass> masses);
  static SeedVector single(NodeId node) { return SeedVector({{node, 1.0}}); }
  /// Uniform mass over `nodes`.
  static SeedVector uniform(const NodeSet& nodes);

  double operator[](NodeId v) const;
  std::span<const SeedMass> masses() const noexcept { return masses_; }
  NodeSet nodes() const;

 private:
  std::vector<SeedMass> masses_;  // sorted by node
};

/// Definition of the objective
///   F(x) = 1/2 x'Qx - alpha x's + rho alpha ||Dx||_1,
///   Q = alpha D + (1 - alpha)/2 L.
/// The graph is borrowed and must outlive the problem.
struct PageRankProblem {
  const Graph* graph = nullptr;
  SeedVector seed;
  double alpha = 0.15;
  double rho = 0.0;

  PageRankProblem() = default;
  PageRankProblem(const Graph& g, SeedVector s, double alpha_, double rho_);

  const Graph& g() const { return *graph; }
  PageRankProblem with_rho(double r) const;
  /// Throws InvalidArgument when alpha is outside (0,1), rho < 0, a seed id is
  /// out of range, or a seed node has zero degree.
  void validate() const;

  /// Q_ii = (1 + alpha)/2 d_i
  double diag(NodeId i) const;
  /// rho alpha d_i
  double threshold(NodeId i) const;
};

/// grad_i f(x) = (1+a)/2 d_i x_i - (1-a)/2 sum_j w_ij x_j - a s_i.
/// Reads only x at i and its neighbors.
double gradient(const PageRankProblem& prob, const SparseVector& x, NodeId i);

/// Same, for a dense iterate.
double gradient(const PageRankProblem& prob, std::span<const double> x, NodeId i);

/// Smooth part f(x) plus the weighted l1 penalty.
double objective(const PageRankProblem& prob, const SparseVector& x);

/// Vol(supp x) <= (1 - d'x) / rho. Holds for every exact minimizer; checked
/// with plain floating comparison.
struct VolumeBound {
  double support_volume = 0.0;
  double bound = 0.0;
  bool holds = true;
};
VolumeBound volume_bound(const PageRankProblem& prob, const SparseVector& x);

}  // namespace localpr
