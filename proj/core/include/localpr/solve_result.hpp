#pragma once

#include <cstddef>
#include <string>

#include "localpr/errors.hpp"
#include "localpr/graph.hpp"
#include "localpr/sparse_vector.hpp"

namespace localpr {

/// Work and locality counters for a single solve.
struct SolveStats {
  std::size_t iterations = 0;  // coordinate updates (pushes for APPR)
  NodeSet touched;             // every node whose gradient was evaluated
  double wall_seconds = 0.0;
  double max_kkt_violation = 0.0;
};

struct SolveResult {
  SparseVector x;
  SolveStats stats;
};

/// Raised when a solver would evaluate more than `max_touch` distinct nodes.
class LocalityBudgetExceeded : public Error {
 public:
  LocalityBudgetExceeded(std::size_t budget, SparseVector partial)
      : Error("locality budget of " + std::to_string(budget) +
              " touched nodes exceeded"),
        budget_(budget),
        partial_(std::move(partial)) {}

  std::size_t budget() const noexcept { return budget_; }
  const SparseVector& partial() const noexcept { return partial_; }

 private:
  std::size_t budget_;
  SparseVector partial_;
};

}  // namespace localpr
