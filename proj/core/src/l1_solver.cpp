#include "localpr/l1_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "localpr/errors.hpp"

namespace localpr {
namespace {

class CoordinateDescent {
 public:
  CoordinateDescent(const PageRankProblem& prob, const L1SolveOptions& opt)
      : prob_(prob), opt_(opt), half_leak_(0.5 * (1.0 - prob.alpha)) {}

  SolveResult run() {
    const auto start = std::chrono::steady_clock::now();
    for (const SeedMass& m : prob_.seed.masses()) {
      touch(m.node) = -prob_.alpha * m.mass;
      maybe_enqueue(m.node);
    }
    for (;;) {
      while (!queue_.empty()) {
        const NodeId i = queue_.front();
        queue_.pop_front();
        queued_.erase(i);
        update(i);
        if (opt_.refresh_interval > 0 && iterations_ - last_refresh_ >= opt_.refresh_interval) {
          refresh();
        }
      }
      // Drift in cached gradients could hide a violator; only stop once the
      // definition itself agrees.
      if (refresh() == 0) break;
    }
    SolveResult out{SparseVector::from_map(x_), {}};
    out.stats.iterations = iterations_;
    std::vector<NodeId> touched;
    touched.reserve(grad_.size());
    for (const auto& [node, g] : grad_) touched.push_back(node);
    out.stats.touched = NodeSet(std::move(touched));
    out.stats.max_kkt_violation = check_kkt(prob_, out.x, opt_.tol).max_violation;
    out.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

 private:
  double& touch(NodeId i) {
    auto [it, inserted] = grad_.try_emplace(i, 0.0);
    if (inserted) {
      // An untouched node has no updated neighbor, so its gradient is -a s_i.
      it->second = -prob_.alpha * prob_.seed[i];
      if (opt_.max_touch > 0 && grad_.size() > opt_.max_touch) {
        throw LocalityBudgetExceeded(opt_.max_touch, SparseVector::from_map(x_));
      }
    }
    return it->second;
  }

  bool violates(NodeId i, double g) const {
    return g < -prob_.threshold(i) * (1.0 + opt_.tol);
  }

  void maybe_enqueue(NodeId i) {
    if (violates(i, grad_.at(i)) && queued_.insert(i).second) queue_.push_back(i);
  }

  void update(NodeId i) {
    const double g = grad_.at(i);
    if (!violates(i, g)) return;
    double& xi = x_[i];
    const double next = std::max(0.0, xi - (g + prob_.threshold(i)) / prob_.diag(i));
    const double delta = next - xi;
    xi = next;
    grad_[i] = g + prob_.diag(i) * delta;
    ++iterations_;
    const Graph& graph = prob_.g();
    auto nb = graph.neighbors(i);
    auto ws = graph.weights(i);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      touch(nb[t]) -= half_leak_ * ws[t] * delta;
      maybe_enqueue(nb[t]);
    }
  }

  std::size_t refresh() {
    last_refresh_ = iterations_;
    const SparseVector x = SparseVector::from_map(x_);
    for (auto& [node, g] : grad_) g = gradient(prob_, x, node);
    std::size_t queued = 0;
    for (const auto& [node, g] : grad_) {
      if (violates(node, g) && queued_.insert(node).second) {
        queue_.push_back(node);
        ++queued;
      }
    }
    return queued;
  }

  const PageRankProblem& prob_;
  L1SolveOptions opt_;
  double half_leak_;
  std::unordered_map<NodeId, double> x_;
  std::unordered_map<NodeId, double> grad_;
  std::unordered_set<NodeId> queued_;
  std::deque<NodeId> queue_;
  std::size_t iterations_ = 0;
  std::size_t last_refresh_ = 0;
};

}  // namespace

SolveResult solve_l1(const PageRankProblem& prob, const L1SolveOptions& options) {
  prob.validate();
  if (!(prob.rho > 0.0)) {
    throw InvalidArgument("solve_l1 requires rho > 0; use solve_unregularized for rho = 0");
  }
  if (!(options.tol > 0.0)) throw InvalidArgument("tol must be positive");
  return CoordinateDescent(prob, options).run();
}

SparseVector solve_unregularized(const PageRankProblem& prob, double residual_tol) {
  prob.validate();
  const Graph& g = prob.g();
  NodeSet comp;
  for (const SeedMass& m : prob.seed.masses()) comp = comp.set_union(g.component_of(m.node));
  const auto ids = comp.ids();
  const auto local = [&](NodeId v) {
    return static_cast<Eigen::Index>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };

  const auto m = static_cast<Eigen::Index>(ids.size());
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  const double leak = 0.5 * (1.0 - prob.alpha);
  for (Eigen::Index r = 0; r < m; ++r) {
    const NodeId v = ids[static_cast<std::size_t>(r)];
    triplets.emplace_back(r, r, prob.diag(v));
    auto nb = g.neighbors(v);
    auto ws = g.weights(v);
    for (std::size_t t = 0; t < nb.size(); ++t) triplets.emplace_back(r, local(nb[t]), -leak * ws[t]);
    rhs[r] = prob.alpha * prob.seed[v];
  }
  Eigen::SparseMatrix<double> q(m, m);
  q.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(q);
  if (ldlt.info() != Eigen::Success) throw Error("factorization of Q failed");
  Eigen::VectorXd x = ldlt.solve(rhs);
  for (int round = 0; round < 3; ++round) {
    const Eigen::VectorXd residual = rhs - q * x;
    if (residual.lpNorm<Eigen::Infinity>() <= residual_tol) break;
    x += ldlt.solve(residual);
  }

  std::vector<SparseVector::Entry> entries;
  entries.reserve(ids.size());
  for (Eigen::Index r = 0; r < m; ++r) entries.push_back({ids[static_cast<std::size_t>(r)], x[r]});
  return SparseVector(std::move(entries));
}

KktReport check_kkt(const PageRankProblem& prob, const SparseVector& x, double tol) {
  KktReport rep;
  const Graph& g = prob.g();
  const NodeSet supp = x.support();
  const NodeSet checked = supp.set_union(neighborhood(g, supp)).set_union(prob.seed.nodes());
  const double xmax = std::max(x.linf_norm(), 1e-300);
  auto record = [&](double viol, NodeId i, double& bucket) {
    bucket = std::max(bucket, viol);
    if (!rep.worst_node || viol > rep.max_violation) {
      rep.max_violation = viol;
      rep.worst_node = i;
    }
  };
  for (NodeId i : checked) {
    const double grad = gradient(prob, x, i);
    const double thr = prob.rho > 0.0 ? prob.threshold(i) : prob.alpha * g.degree(i);
    const double xi = x[i];
    if (xi < 0.0) {
      rep.negative_entry = true;
      record(1.0 + std::abs(xi) / xmax, i, rep.max_support_violation);
    } else if (xi > 0.0) {
      const double target = -prob.rho * prob.alpha * g.degree(i);
      record(std::abs(grad - target) / thr, i, rep.max_support_violation);
    } else {
      const double lo = -prob.rho * prob.alpha * g.degree(i);
      const double viol = std::max({lo - grad, grad, 0.0}) / thr;
      record(viol, i, rep.max_zero_violation);
    }
  }
  rep.checked_nodes = checked.size();
  rep.passed = !rep.negative_entry && rep.max_violation <= tol;
  return rep;
}

}  // namespace localpr
