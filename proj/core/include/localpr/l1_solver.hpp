#pragma once

#include <cstddef>
#include <optional>

#include "localpr/problem.hpp"
#include "localpr/solve_result.hpp"

namespace localpr {

struct L1SolveOptions {
  /// Relative KKT tolerance in units of rho*alpha*d_i.
  double tol = 1e-8;
  /// Maximum number of distinct touched nodes; 0 disables the budget.
  std::size_t max_touch = 0;
  /// Cached gradients are recomputed from scratch after this many updates.
  std::size_t refresh_interval = 10000;
};

/// Strongly local proximal coordinate descent for the l1-regularized
/// PageRank problem (rho > 0).
///
/// A FIFO queue holds nodes whose gradient is below -rho*alpha*d_i*(1 + tol).
/// Popping node i sets
///   x_i <- max(0, x_i - (grad_i + rho*alpha*d_i) / Q_ii),
/// which zeroes the shifted gradient at i, and pushes any neighbor that
/// becomes violating. Starting from zero every update is an increase, so the
/// iterates rise monotonically toward the minimizer and never leave the
/// support's neighborhood.
///
/// Throws LocalityBudgetExceeded when options.max_touch is exceeded.
SolveResult solve_l1(const PageRankProblem& prob, const L1SolveOptions& options = {});

/// Personalized PageRank without regularization, x = D^{-1} p with
/// p = alpha s + (1 - alpha) W p, computed by a sparse direct solve of
/// Qx = alpha s over the union of the seeds' components. Dense over that
/// component. prob.rho is ignored. Iterative refinement runs until
/// ||Qx - alpha s||_inf <= residual_tol (at most three rounds).
SparseVector solve_unregularized(const PageRankProblem& prob, double residual_tol = 1e-12);

/// Optimality report. Every node in supp(x), its neighbors and the seed set is
/// classified and its violation expressed in units of rho*alpha*d_i:
///   x_i > 0                 |grad_i + rho alpha d_i|
///   x_i = 0                 distance of grad_i from [-rho alpha d_i, 0]
///   x_i < 0                 |x_i| / (largest x) + 1, always a failure
struct KktReport {
  double max_support_violation = 0.0;
  double max_zero_violation = 0.0;
  double max_violation = 0.0;
  std::optional<NodeId> worst_node;
  std::size_t checked_nodes = 0;
  bool negative_entry = false;
  bool passed = true;
};

KktReport check_kkt(const PageRankProblem& prob, const SparseVector& x, double tol);

}  // namespace localpr
