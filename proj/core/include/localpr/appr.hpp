#pragma once

#include <cstddef>
#include <deque>
#include <unordered_map>
#include <vector>

#include "localpr/problem.hpp"
#include "localpr/solve_result.hpp"

namespace localpr {

enum class PushOrder { Fifo, Lifo };

struct ApprOptions {
  PushOrder order = PushOrder::Fifo;
  /// Cached gradients are recomputed from their definition every this many
  /// pushes (0 disables periodic refresh; a final refresh always runs).
  std::size_t refresh_interval = 10000;
  std::size_t max_touch = 0;
};

/// Push-based approximate personalized PageRank.
///
/// Starting from x = 0, any node with grad_i f(x) <= -rho*alpha*d_i is pushed:
/// x_i += -grad_i / d_i. The push scales grad_i by (1 - alpha)/2 and lowers
/// each neighbor's gradient by (1 - alpha)/2 * w_ij * (-grad_i) / d_i, so
/// gradients are cached and updated in O(d_i).
class ApprState {
 public:
  ApprState(const PageRankProblem& prob, const ApprOptions& options = {});

  /// Pushes node i unconditionally.
  void push(NodeId i);
  /// Pushes until no node violates the termination criterion.
  void run();

  double cached_gradient(NodeId i) const;
  double value(NodeId i) const;
  SparseVector solution() const;
  NodeSet touched() const;
  std::size_t pushes() const noexcept { return pushes_; }

  /// Recomputes every cached gradient from its definition; re-queues any node
  /// that violates the criterion. Returns the number of queued nodes.
  std::size_t refresh();

 private:
  bool violates(NodeId i, double grad) const;
  double& grad_slot(NodeId i);
  void enqueue(NodeId i);
  bool pop(NodeId& i);

  const PageRankProblem& prob_;
  ApprOptions options_;
  std::unordered_map<NodeId, double> x_;
  std::unordered_map<NodeId, double> grad_;
  std::unordered_map<NodeId, bool> queued_;
  std::deque<NodeId> queue_;
  std::size_t pushes_ = 0;
};

SolveResult appr_solve(const PageRankProblem& prob, const ApprOptions& options = {});

struct ApprResidualReport {
  /// max_i |grad_i f(x)| / d_i over supp(x), its neighbors and the seeds.
  double max_scaled_residual = 0.0;
  /// Nodes with grad_i f(x) <= -rho*alpha*d_i.
  std::vector<NodeId> flagged;
  std::size_t checked_nodes = 0;
  bool terminated() const noexcept { return flagged.empty(); }
};

ApprResidualReport appr_residual_report(const PageRankProblem& prob, const SparseVector& x);

}  // namespace localpr
