#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "localpr/problem.hpp"
#include "localpr/sparse_vector.hpp"

namespace localpr {

struct StagewiseStop {
  std::optional<double> min_rho;          // stop once implied rho <= min_rho
  std::optional<std::size_t> max_iters;
  std::optional<double> max_l1;           // stop once ||x||_1 >= max_l1
  bool any() const { return min_rho || max_iters || max_l1; }
};

struct StagewiseOptions {
  double eta = 1e-5;
  StagewiseStop stop;
  /// Keep every `stride`-th iterate; iterates where the support grows are
  /// always kept. 0 keeps only support changes (plus the endpoints).
  std::size_t stride = 10;
  std::size_t refresh_interval = 10000;
};

/// 1e-4 scaled by alpha.
double default_eta(double alpha);

struct PathPoint {
  std::size_t step = 0;
  SparseVector iterate;
  double l1_norm = 0.0;
  /// -min_i grad_i f(x) / (alpha d_i): the largest rho for which the iterate
  /// violates no lower KKT bound.
  double implied_rho = 0.0;
};

enum class StopReason { MinRho, MaxIters, MaxL1, NonnegativeGradient };

struct SolutionPath {
  std::vector<PathPoint> points;
  std::size_t stride = 0;
  double eta = 0.0;
  std::size_t iterations = 0;
  NodeSet touched;
  StopReason reason = StopReason::MaxIters;
};

/// Forward stagewise path: at every step the node with the smallest
/// normalized gradient grad_i / d_i (which must be negative) receives
/// eta / d_i. Ties go to the lowest node id. prob.rho is ignored.
///
/// Candidates live in an ordered set over touched nodes only; nodes never
/// touched have zero gradient and cannot beat a negative candidate.
SolutionPath stagewise_path(const PageRankProblem& prob, const StagewiseOptions& options);

/// Stored point whose implied rho is closest to `rho` (ties -> earlier).
/// Throws OutOfPathRange when rho is below the smallest implied rho reached.
const PathPoint& path_point_near(const SolutionPath& path, double rho);
SparseVector path_to_solution(const SolutionPath& path, double rho);

/// Long format: step,l1_norm,implied_rho,node,value (one row per nonzero).
void write_path_csv(std::ostream& out, const SolutionPath& path);

}  // namespace localpr
