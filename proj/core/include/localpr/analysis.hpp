#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "localpr/graph.hpp"
#include "localpr/problem.hpp"
#include "localpr/solve_result.hpp"
#include "localpr/sparse_vector.hpp"

namespace localpr {

/// Volume-weighted recovery metrics of a node set against a target.
struct ClusterEval {
  double precision = 0.0;  // Vol(TP) / Vol(recovered)
  double recall = 0.0;     // Vol(TP) / Vol(target)
  double f1 = 0.0;
  double tp_volume = 0.0;
  double fp_volume = 0.0;
  double recovered_volume = 0.0;
  double target_volume = 0.0;
  std::optional<double> conductance;  // absent when recovered is empty or V
  bool empty_recovered = false;
};

/// Throws InvalidArgument when target is empty.
ClusterEval evaluate(const Graph& g, const NodeSet& recovered, const NodeSet& target);

struct SweepResult {
  std::vector<NodeId> order;             // support sorted by value desc, id asc
  std::vector<double> prefix_conductance; // [r] = conductance of order[0..r]
  std::size_t best_size = 0;             // length of the argmin prefix
  double best_conductance = 0.0;
  NodeSet best_set;
};

/// Sweep cut over supp(x). Conductances are maintained incrementally in
/// O(vol(supp x)). A prefix equal to the whole vertex set has conductance
/// +inf. Ties go to the shorter prefix. Throws EmptyVector when x = 0.
SweepResult sweep_cut(const Graph& g, const SparseVector& x);

using SetPredicate = std::function<bool(const NodeSet&)>;

/// Batch breadth-first expansion: each step absorbs the whole current
/// frontier layer. `stop` is evaluated before every layer. Throws
/// InvalidArgument when seeds is empty.
NodeSet bfs_expand(const Graph& g, const NodeSet& seeds, std::size_t steps,
                   const SetPredicate& stop = {});

/// Vol(S & target) / Vol(target) >= fraction.
SetPredicate target_overlap_at_least(const Graph& g, const NodeSet& target, double fraction);
/// Vol(S) / Vol(V) >= fraction.
SetPredicate volume_fraction_at_least(const Graph& g, double fraction);
SetPredicate either(SetPredicate a, SetPredicate b);

/// Support nesting supp(x(rho)) <= supp(appr(rho)) <= supp(x((1-alpha) rho/2)).
struct SandwichReport {
  double rho = 0.0;
  double rho_lower = 0.0;
  std::size_t l1_support = 0;
  std::size_t appr_support = 0;
  std::size_t l1_lower_support = 0;
  bool l1_in_appr = true;
  bool appr_in_l1_lower = true;
  bool passed = true;
  SolveResult l1;
  SolveResult appr;
  SolveResult l1_lower;
};

SandwichReport check_sandwich(const Graph& g, NodeId seed, double alpha, double rho,
                              double tol = 1e-8);

/// supp(x) | N(supp x) | seeds | N(seeds) contains `touched`.
bool is_local(const Graph& g, const SparseVector& x, const NodeSet& seeds,
              const NodeSet& touched);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

}  // namespace localpr
