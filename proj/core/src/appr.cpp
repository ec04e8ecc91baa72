#include "localpr/appr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "localpr/errors.hpp"
#include "localpr/l1_solver.hpp"

namespace localpr {

ApprState::ApprState(const PageRankProblem& prob, const ApprOptions& options)
    : prob_(prob), options_(options) {
  prob_.validate();
  if (!(prob_.rho > 0.0)) throw InvalidArgument("APPR requires rho > 0");
  for (const SeedMass& m : prob_.seed.masses()) {
    grad_slot(m.node);
    enqueue(m.node);
  }
}

double& ApprState::grad_slot(NodeId i) {
  auto [it, inserted] = grad_.try_emplace(i, 0.0);
  if (inserted) {
    it->second = -prob_.alpha * prob_.seed[i];
    if (options_.max_touch > 0 && grad_.size() > options_.max_touch) {
      throw LocalityBudgetExceeded(options_.max_touch, solution());
    }
  }
  return it->second;
}

bool ApprState::violates(NodeId i, double grad) const { return grad <= -prob_.threshold(i); }

void ApprState::enqueue(NodeId i) {
  if (!violates(i, grad_.at(i))) return;
  bool& q = queued_[i];
  if (q) return;
  q = true;
  queue_.push_back(i);
}

bool ApprState::pop(NodeId& i) {
  if (queue_.empty()) return false;
  if (options_.order == PushOrder::Fifo) {
    i = queue_.front();
    queue_.pop_front();
  } else {
    i = queue_.back();
    queue_.pop_back();
  }
  queued_[i] = false;
  return true;
}

void ApprState::push(NodeId i) {
  const double g = grad_slot(i);
  const double d = prob_.g().degree(i);
  const double delta = -g / d;
  x_[i] += delta;
  const double leak = 0.5 * (1.0 - prob_.alpha);
  grad_[i] = leak * g;
  auto nb = prob_.g().neighbors(i);
  auto ws = prob_.g().weights(i);
  for (std::size_t t = 0; t < nb.size(); ++t) {
    grad_slot(nb[t]) -= leak * ws[t] * delta;
    enqueue(nb[t]);
  }
  enqueue(i);
  ++pushes_;
}

void ApprState::run() {
  std::size_t since_refresh = 0;
  for (;;) {
    NodeId i = 0;
    while (pop(i)) {
      if (!violates(i, grad_.at(i))) continue;
      push(i);
      if (options_.refresh_interval > 0 && ++since_refresh >= options_.refresh_interval) {
        since_refresh = 0;
        refresh();
      }
    }
    if (refresh() == 0) return;
  }
}

std::size_t ApprState::refresh() {
  const SparseVector x = solution();
  for (auto& [node, g] : grad_) g = gradient(prob_, x, node);
  std::size_t before = queue_.size();
  for (const auto& [node, g] : grad_) enqueue(node);
  return queue_.size() - before;
}

double ApprState::cached_gradient(NodeId i) const {
  auto it = grad_.find(i);
  return it == grad_.end() ? -prob_.alpha * prob_.seed[i] : it->second;
}

double ApprState::value(NodeId i) const {
  auto it = x_.find(i);
  return it == x_.end() ? 0.0 : it->second;
}

SparseVector ApprState::solution() const { return SparseVector::from_map(x_); }

NodeSet ApprState::touched() const {
  std::vector<NodeId> ids;
  ids.reserve(grad_.size());
  for (const auto& [node, g] : grad_) ids.push_back(node);
  return NodeSet(std::move(ids));
}

SolveResult appr_solve(const PageRankProblem& prob, const ApprOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ApprState state(prob, options);
  state.run();
  SolveResult out{state.solution(), {}};
  out.stats.iterations = state.pushes();
  out.stats.touched = state.touched();
  out.stats.max_kkt_violation = check_kkt(prob, out.x, 0.0).max_violation;
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ApprResidualReport appr_residual_report(const PageRankProblem& prob, const SparseVector& x) {
  ApprResidualReport rep;
  const Graph& g = prob.g();
  const NodeSet supp = x.support();
  const NodeSet checked = supp.set_union(neighborhood(g, supp)).set_union(prob.seed.nodes());
  for (NodeId i : checked) {
    const double grad = gradient(prob, x, i);
    rep.max_scaled_residual = std::max(rep.max_scaled_residual, std::abs(grad) / g.degree(i));
    if (grad <= -prob.threshold(i)) rep.flagged.push_back(i);
  }
  rep.checked_nodes = checked.size();
  return rep;
}

}  // namespace localpr
