#include "localpr/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "localpr/errors.hpp"

namespace localpr {

SeedVector::SeedVector(std::vector<SeedMass> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw InvalidArgument("seed vector is empty");
  std::sort(masses_.begin(), masses_.end(),
            [](const SeedMass& a, const SeedMass& b) { return a.node < b.node; });
  double total = 0.0;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (!(masses_[i].mass >= 0.0)) throw InvalidArgument("seed mass must be nonnegative");
    if (i > 0 && masses_[i].node == masses_[i - 1].node) {
      throw InvalidArgument("duplicate seed node " + std::to_string(masses_[i].node));
    }
    total += masses_[i].mass;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("seed masses must sum to 1");
  std::erase_if(masses_, [](const SeedMass& m) { return m.mass == 0.0; });
}

SeedVector SeedVector::uniform(const NodeSet& nodes) {
  if (nodes.empty()) throw InvalidArgument("seed set is empty");
  std::vector<SeedMass> masses;
  const double m = 1.0 / static_cast<double>(nodes.size());
  for (NodeId v : nodes) masses.push_back({v, m});
  return SeedVector(std::move(masses));
}

double SeedVector::operator[](NodeId v) const {
  auto it = std::lower_bound(masses_.begin(), masses_.end(), v,
                             [](const SeedMass& m, NodeId id) { return m.node < id; });
  return it != masses_.end() && it->node == v ? it->mass : 0.0;
}

NodeSet SeedVector::nodes() const {
  std::vector<NodeId> ids;
  for (const SeedMass& m : masses_) ids.push_back(m.node);
  return NodeSet(std::move(ids));
}

PageRankProblem::PageRankProblem(const Graph& g, SeedVector s, double alpha_, double rho_)
    : graph(&g), seed(std::move(s)), alpha(alpha_), rho(rho_) {
  validate();
}

PageRankProblem PageRankProblem::with_rho(double r) const {
  PageRankProblem p = *this;
  p.rho = r;
  p.validate();
  return p;
}

void PageRankProblem::validate() const {
  if (graph == nullptr) throw InvalidArgument("problem has no graph");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidArgument("rho must be finite and >= 0");
  if (seed.masses().empty()) throw InvalidArgument("seed vector is empty");
  for (const SeedMass& m : seed.masses()) {
    if (m.node >= graph->num_nodes()) {
      throw InvalidArgument("seed node " + std::to_string(m.node) + " is not in the graph");
    }
    if (!(graph->degree(m.node) > 0.0)) {
      throw InvalidArgument("seed node " + std::to_string(m.node) + " has zero degree");
    }
  }
}

double PageRankProblem::diag(NodeId i) const { return 0.5 * (1.0 + alpha) * graph->degree(i); }

double PageRankProblem::threshold(NodeId i) const { return rho * alpha * graph->degree(i); }

double gradient(const PageRankProblem& prob, const SparseVector& x, NodeId i) {
  const Graph& g = prob.g();
  auto nb = g.neighbors(i);
  auto ws = g.weights(i);
  double off = 0.0;
  for (std::size_t t = 0; t < nb.size(); ++t) off += ws[t] * x[nb[t]];
  return prob.diag(i) * x[i] - 0.5 * (1.0 - prob.alpha) * off - prob.alpha * prob.seed[i];
}

double gradient(const PageRankProblem& prob, std::span<const double> x, NodeId i) {
  const Graph& g = prob.g();
  auto nb = g.neighbors(i);
  auto ws = g.weights(i);
  double off = 0.0;
  for (std::size_t t = 0; t < nb.size(); ++t) off += ws[t] * x[nb[t]];
  return prob.diag(i) * x[i] - 0.5 * (1.0 - prob.alpha) * off - prob.alpha * prob.seed[i];
}

double objective(const PageRankProblem& prob, const SparseVector& x) {
  // x'Qx = (1+a)/2 sum d_i x_i^2 - (1-a)/2 sum_i x_i (Ax)_i
  const Graph& g = prob.g();
  double quad = 0.0;
  double lin = 0.0;
  double pen = 0.0;
  for (const auto& e : x) {
    double ax = 0.0;
    auto nb = g.neighbors(e.node);
    auto ws = g.weights(e.node);
    for (std::size_t t = 0; t < nb.size(); ++t) ax += ws[t] * x[nb[t]];
    quad += prob.diag(e.node) * e.value * e.value - 0.5 * (1.0 - prob.alpha) * e.value * ax;
    lin += prob.seed[e.node] * e.value;
    pen += g.degree(e.node) * std::abs(e.value);
  }
  return 0.5 * quad - prob.alpha * lin + prob.rho * prob.alpha * pen;
}

VolumeBound volume_bound(const PageRankProblem& prob, const SparseVector& x) {
  VolumeBound b;
  for (const auto& e : x) b.support_volume += prob.g().degree(e.node);
  b.bound = (1.0 - x.degree_weighted_sum(prob.g())) / prob.rho;
  b.holds = b.support_volume <= b.bound;
  return b;
}

}  // namespace localpr
