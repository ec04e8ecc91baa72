#include "localpr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>

#include "localpr/appr.hpp"
#include "localpr/errors.hpp"
#include "localpr/l1_solver.hpp"

namespace localpr {

ClusterEval evaluate(const Graph& g, const NodeSet& recovered, const NodeSet& target) {
  if (target.empty()) throw InvalidArgument("target set is empty");
  ClusterEval e;
  e.target_volume = volume(g, target);
  if (recovered.empty()) {
    e.empty_recovered = true;
    return e;
  }
  e.recovered_volume = volume(g, recovered);
  e.tp_volume = volume(g, recovered.set_intersection(target));
  e.fp_volume = volume(g, recovered.set_difference(target));
  if (e.recovered_volume > 0.0) e.precision = e.tp_volume / e.recovered_volume;
  if (e.target_volume > 0.0) e.recall = e.tp_volume / e.target_volume;
  if (e.precision + e.recall > 0.0) {
    e.f1 = 2.0 * e.precision * e.recall / (e.precision + e.recall);
  }
  if (recovered.size() < g.num_nodes() && e.recovered_volume > 0.0 &&
      e.recovered_volume < g.total_volume()) {
    e.conductance = conductance(g, recovered);
  }
  return e;
}

SweepResult sweep_cut(const Graph& g, const SparseVector& x) {
  if (x.empty()) throw EmptyVector("sweep cut of the zero vector");
  SweepResult r;
  r.order.reserve(x.nnz());
  for (const auto& e : x) {
    if (e.node >= g.num_nodes()) throw InvalidArgument("vector entry out of range");
    r.order.push_back(e.node);
  }
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](NodeId a, NodeId b) { return x[a] > x[b]; });

  const double total = g.total_volume();
  std::unordered_set<NodeId> in;
  in.reserve(r.order.size() * 2);
  double vol = 0.0, boundary = 0.0;
  r.best_conductance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    const NodeId v = r.order[i];
    double inner = 0.0;
    auto nb = g.neighbors(v);
    auto ws = g.weights(v);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      if (in.count(nb[t])) inner += ws[t];
    }
    in.insert(v);
    vol += g.degree(v);
    boundary += g.degree(v) - 2.0 * inner;
    const double denom = std::min(vol, total - vol);
    double phi = std::numeric_limits<double>::infinity();
    if (i + 1 < g.num_nodes() && denom > 0.0) phi = std::max(0.0, boundary) / denom;
    r.prefix_conductance.push_back(phi);
    if (phi < r.best_conductance) {
      r.best_conductance = phi;
      r.best_size = i + 1;
    }
  }
  // Every prefix degenerate: fall back to the first node.
  if (r.best_size == 0) r.best_size = 1;
  r.best_set = NodeSet(std::vector<NodeId>(r.order.begin(), r.order.begin() + r.best_size));
  return r;
}

NodeSet bfs_expand(const Graph& g, const NodeSet& seeds, std::size_t steps,
                   const SetPredicate& stop) {
  if (seeds.empty()) throw InvalidArgument("seed set is empty");
  for (NodeId s : seeds) {
    if (s >= g.num_nodes()) throw InvalidArgument("seed node out of range");
  }
  std::vector<NodeId> visited(seeds.begin(), seeds.end());
  std::unordered_set<NodeId> seen(seeds.begin(), seeds.end());
  std::vector<NodeId> frontier = visited;
  NodeSet current = seeds;
  for (std::size_t step = 0; step < steps && !frontier.empty(); ++step) {
    if (stop && stop(current)) break;
    std::vector<NodeId> next;
    for (NodeId v : frontier) {
      for (NodeId u : g.neighbors(v)) {
        if (seen.insert(u).second) next.push_back(u);
      }
    }
    if (next.empty()) break;
    visited.insert(visited.end(), next.begin(), next.end());
    frontier = std::move(next);
    current = NodeSet(visited);
  }
  return current;
}

SetPredicate target_overlap_at_least(const Graph& g, const NodeSet& target, double fraction) {
  const double target_volume = volume(g, target);
  return [&g, target, target_volume, fraction](const NodeSet& s) {
    return volume(g, s.set_intersection(target)) >= fraction * target_volume;
  };
}

SetPredicate volume_fraction_at_least(const Graph& g, double fraction) {
  return [&g, fraction](const NodeSet& s) { return volume(g, s) >= fraction * g.total_volume(); };
}

SetPredicate either(SetPredicate a, SetPredicate b) {
  return [a = std::move(a), b = std::move(b)](const NodeSet& s) { return a(s) || b(s); };
}

SandwichReport check_sandwich(const Graph& g, NodeId seed, double alpha, double rho,
                              double tol) {
  if (!(rho > 0.0)) throw InvalidArgument("sandwich check needs rho > 0");
  SandwichReport r;
  r.rho = rho;
  r.rho_lower = 0.5 * (1.0 - alpha) * rho;
  const PageRankProblem prob(g, SeedVector::single(seed), alpha, rho);
  L1SolveOptions opt;
  opt.tol = tol;
  r.l1 = solve_l1(prob, opt);
  r.appr = appr_solve(prob);
  r.l1_lower = solve_l1(prob.with_rho(r.rho_lower), opt);
  const NodeSet a = r.l1.x.support();
  const NodeSet b = r.appr.x.support();
  const NodeSet c = r.l1_lower.x.support();
  r.l1_support = a.size();
  r.appr_support = b.size();
  r.l1_lower_support = c.size();
  r.l1_in_appr = a.is_subset_of(b);
  r.appr_in_l1_lower = b.is_subset_of(c);
  r.passed = r.l1_in_appr && r.appr_in_l1_lower;
  return r;
}

bool is_local(const Graph& g, const SparseVector& x, const NodeSet& seeds,
              const NodeSet& touched) {
  const NodeSet core = x.support().set_union(seeds);
  return touched.is_subset_of(core.set_union(neighborhood(g, core)));
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw InvalidArgument("more successes than trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace localpr
