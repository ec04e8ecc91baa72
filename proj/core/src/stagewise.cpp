#include "localpr/stagewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "localpr/errors.hpp"
#include "localpr/io.hpp"

namespace localpr {

double default_eta(double alpha) { return 1e-4 * alpha; }

namespace {

class Stagewise {
 public:
  Stagewise(const PageRankProblem& prob, const StagewiseOptions& opt)
      : prob_(prob), opt_(opt), leak_(0.5 * (1.0 - prob.alpha)) {}

  SolutionPath run() {
    SolutionPath path;
    path.stride = opt_.stride;
    path.eta = opt_.eta;
    for (const SeedMass& m : prob_.seed.masses()) set_grad(m.node, -prob_.alpha * m.mass);
    record(path, 0);

    std::size_t step = 0;
    std::size_t since_refresh = 0;
    for (;;) {
      const auto& [key, i] = *candidates_.begin();
      const double implied = -key / prob_.alpha;
      if (key >= 0.0) {
        path.reason = StopReason::NonnegativeGradient;
        break;
      }
      if (opt_.stop.min_rho && implied <= *opt_.stop.min_rho) {
        path.reason = StopReason::MinRho;
        break;
      }
      if (opt_.stop.max_iters && step >= *opt_.stop.max_iters) {
        path.reason = StopReason::MaxIters;
        break;
      }
      if (opt_.stop.max_l1 && l1_ >= *opt_.stop.max_l1) {
        path.reason = StopReason::MaxL1;
        break;
      }
      const bool grew = advance(i);
      ++step;
      if (opt_.refresh_interval > 0 && ++since_refresh >= opt_.refresh_interval) {
        since_refresh = 0;
        refresh();
      }
      if (grew || (opt_.stride > 0 && step % opt_.stride == 0)) record(path, step);
    }
    if (path.points.back().step != step) record(path, step);
    path.iterations = step;
    std::vector<NodeId> touched;
    touched.reserve(grad_.size());
    for (const auto& [node, g] : grad_) touched.push_back(node);
    path.touched = NodeSet(std::move(touched));
    return path;
  }

 private:
  void set_grad(NodeId i, double g) {
    auto it = grad_.find(i);
    if (it != grad_.end()) {
      candidates_.erase({it->second / prob_.g().degree(i), i});
      it->second = g;
    } else {
      grad_.emplace(i, g);
    }
    candidates_.insert({g / prob_.g().degree(i), i});
  }

  double grad(NodeId i) const {
    auto it = grad_.find(i);
    return it == grad_.end() ? -prob_.alpha * prob_.seed[i] : it->second;
  }

  // Returns true when i enters the support.
  bool advance(NodeId i) {
    const Graph& g = prob_.g();
    const double d = g.degree(i);
    const double delta = opt_.eta / d;
    double& xi = x_[i];
    const bool entered = xi == 0.0;
    xi += delta;
    l1_ += delta;
    set_grad(i, grad(i) + prob_.diag(i) * delta);
    auto nb = g.neighbors(i);
    auto ws = g.weights(i);
    for (std::size_t t = 0; t < nb.size(); ++t) set_grad(nb[t], grad(nb[t]) - leak_ * ws[t] * delta);
    return entered;
  }

  void refresh() {
    const SparseVector x = SparseVector::from_map(x_);
    std::vector<std::pair<NodeId, double>> fresh;
    fresh.reserve(grad_.size());
    for (const auto& [node, g] : grad_) fresh.emplace_back(node, gradient(prob_, x, node));
    for (const auto& [node, g] : fresh) set_grad(node, g);
  }

  void record(SolutionPath& path, std::size_t step) {
    PathPoint pt;
    pt.step = step;
    pt.iterate = SparseVector::from_map(x_);
    pt.l1_norm = pt.iterate.l1_norm();
    pt.implied_rho = -candidates_.begin()->first / prob_.alpha;
    path.points.push_back(std::move(pt));
  }

  const PageRankProblem& prob_;
  StagewiseOptions opt_;
  double leak_;
  std::unordered_map<NodeId, double> x_;
  std::unordered_map<NodeId, double> grad_;
  std::set<std::pair<double, NodeId>> candidates_;
  double l1_ = 0.0;
};

}  // namespace

SolutionPath stagewise_path(const PageRankProblem& prob, const StagewiseOptions& options) {
  prob.validate();
  if (!(options.eta > 0.0)) throw InvalidArgument("stagewise step eta must be positive");
  if (!options.stop.any()) throw InvalidArgument("stagewise path needs at least one stop criterion");
  return Stagewise(prob, options).run();
}

const PathPoint& path_point_near(const SolutionPath& path, double rho) {
  if (path.points.empty()) throw OutOfPathRange("path is empty");
  double lowest = std::numeric_limits<double>::infinity();
  for (const PathPoint& p : path.points) lowest = std::min(lowest, p.implied_rho);
  if (rho < lowest) {
    throw OutOfPathRange("rho below the smallest implied rho reached by the path");
  }
  const PathPoint* best = &path.points.front();
  double best_gap = std::abs(best->implied_rho - rho);
  for (const PathPoint& p : path.points) {
    const double gap = std::abs(p.implied_rho - rho);
    if (gap < best_gap) {
      best = &p;
      best_gap = gap;
    }
  }
  return *best;
}

SparseVector path_to_solution(const SolutionPath& path, double rho) {
  return path_point_near(path, rho).iterate;
}

void write_path_csv(std::ostream& out, const SolutionPath& path) {
  out << "step,l1_norm,implied_rho,node,value\n";
  for (const PathPoint& p : path.points) {
    for (const auto& e : p.iterate) {
      out << p.step << ',' << format_double(p.l1_norm) << ',' << format_double(p.implied_rho)
          << ',' << e.node << ',' << format_double(e.value) << '\n';
    }
  }
}

}  // namespace localpr
