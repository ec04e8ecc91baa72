#include <doctest.h>

#include <sstream>

#include "localpr/errors.hpp"
#include "localpr/l1_solver.hpp"
#include "localpr/stagewise.hpp"
#include "oracles.hpp"

using namespace localpr;

namespace {

SolutionPath run(const PageRankProblem& prob, double eta, double min_rho, std::size_t stride = 10) {
  StagewiseOptions opt;
  opt.eta = eta;
  opt.stop.min_rho = min_rho;
  opt.stride = stride;
  return stagewise_path(prob, opt);
}

}  // namespace

TEST_CASE("options are validated") {
  Graph g = oracle::random_connected(1, 10, 0.3);
  PageRankProblem prob(g, SeedVector::single(0), 0.2, 0.0);
  StagewiseOptions opt;
  CHECK_THROWS_AS(stagewise_path(prob, opt), InvalidArgument);
  opt.stop.max_iters = 10;
  opt.eta = 0.0;
  CHECK_THROWS_AS(stagewise_path(prob, opt), InvalidArgument);
  CHECK(default_eta(0.5) == doctest::Approx(5e-5));
}

TEST_CASE("first step selects the seed") {
  Graph g = oracle::random_connected(2, 30, 0.1);
  PageRankProblem prob(g, SeedVector::single(7), 0.2, 0.0);
  StagewiseOptions opt;
  opt.eta = 1e-3;
  opt.stop.max_iters = 1;
  opt.stride = 1;
  SolutionPath path = stagewise_path(prob, opt);
  REQUIRE(path.points.size() == 2);
  CHECK(path.points[0].iterate.empty());
  CHECK(path.points[0].implied_rho == doctest::Approx(1.0 / g.degree(7)));
  CHECK(path.points[1].iterate.support() == NodeSet{7});
  CHECK(path.points[1].iterate[7] == doctest::Approx(1e-3 / g.degree(7)));
  CHECK(path.reason == StopReason::MaxIters);
}

TEST_CASE("path is monotone and its support only grows") {
  Graph g = oracle::random_connected(3, 60, 0.06, true);
  PageRankProblem prob(g, SeedVector::single(0), 0.2, 0.0);
  SolutionPath path = run(prob, 1e-3, 0.02 / g.degree(0));
  REQUIRE(path.points.size() > 2);
  for (std::size_t i = 1; i < path.points.size(); ++i) {
    const PathPoint& a = path.points[i - 1];
    const PathPoint& b = path.points[i];
    CHECK(a.step < b.step);
    CHECK(b.l1_norm >= a.l1_norm);
    CHECK(b.iterate.is_nonnegative());
    CHECK(a.iterate.support().is_subset_of(b.iterate.support()));
    for (const auto& e : a.iterate) CHECK(b.iterate[e.node] >= e.value);
    // degree-weighted mass grows by exactly eta per step
    CHECK(b.iterate.degree_weighted_sum(g) ==
          doctest::Approx(1e-3 * static_cast<double>(b.step)).epsilon(1e-9));
  }
  CHECK(path.reason == StopReason::MinRho);
  CHECK(path.points.back().implied_rho <= 0.02 / g.degree(0));
}

TEST_CASE("every support change is stored") {
  Graph g = oracle::random_connected(4, 40, 0.1);
  PageRankProblem prob(g, SeedVector::single(0), 0.3, 0.0);
  SolutionPath sparse = run(prob, 1e-3, 0.05 / g.degree(0), 1000000);
  SolutionPath dense = run(prob, 1e-3, 0.05 / g.degree(0), 1);
  std::vector<std::size_t> changes;
  for (std::size_t i = 1; i < dense.points.size(); ++i) {
    if (dense.points[i].iterate.nnz() != dense.points[i - 1].iterate.nnz()) {
      changes.push_back(dense.points[i].step);
    }
  }
  std::vector<std::size_t> stored;
  for (const PathPoint& p : sparse.points) stored.push_back(p.step);
  for (std::size_t s : changes) {
    CHECK(std::find(stored.begin(), stored.end(), s) != stored.end());
  }
  CHECK(sparse.points.back().iterate == dense.points.back().iterate);
}

TEST_CASE("identical inputs give identical paths") {
  Graph g = oracle::random_connected(5, 50, 0.1);
  PageRankProblem prob(g, SeedVector::single(2), 0.25, 0.0);
  SolutionPath a = run(prob, 5e-4, 0.1 / g.degree(2));
  SolutionPath b = run(prob, 5e-4, 0.1 / g.degree(2));
  std::ostringstream sa, sb;
  write_path_csv(sa, a);
  write_path_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("step,l1_norm,implied_rho,node,value\n", 0) == 0);
}

TEST_CASE("other stop criteria") {
  Graph g = oracle::random_connected(6, 30, 0.1);
  PageRankProblem prob(g, SeedVector::single(0), 0.2, 0.0);
  StagewiseOptions opt;
  opt.eta = 1e-3;
  opt.stop.max_l1 = 0.01;
  SolutionPath path = stagewise_path(prob, opt);
  CHECK(path.reason == StopReason::MaxL1);
  CHECK(path.points.back().l1_norm >= 0.01);
  CHECK(path.touched.size() >= path.points.back().iterate.nnz());
}

TEST_CASE("path lookup") {
  Graph g = oracle::random_connected(7, 50, 0.1);
  PageRankProblem prob(g, SeedVector::single(0), 0.2, 0.0);
  const double top = 1.0 / g.degree(0);
  SolutionPath path = run(prob, 1e-4, 0.1 * top);
  CHECK(path_to_solution(path, 2.0 * top).empty());
  const PathPoint& mid = path.points[path.points.size() / 2];
  CHECK(&path_point_near(path, mid.implied_rho) <= &mid);
  CHECK(path_point_near(path, mid.implied_rho).implied_rho == mid.implied_rho);
  CHECK_THROWS_AS(path_to_solution(path, 0.01 * top), OutOfPathRange);
}

TEST_CASE("kkt violation at matched rho shrinks with the step") {
  Graph g = oracle::random_connected(8, 50, 0.08);
  const double alpha = 0.2;
  PageRankProblem prob(g, SeedVector::single(0), alpha, 0.0);
  const double rho = 0.01 / g.degree(0);
  double prev = std::numeric_limits<double>::infinity();
  double prev_kkt = std::numeric_limits<double>::infinity();
  for (double eta : {1e-2, 1e-3, 1e-4}) {
    SolutionPath path = run(prob, eta, 0.5 * rho, 1);
    const PathPoint& pt = path_point_near(path, rho);
    const SparseVector exact = solve_l1(prob.with_rho(pt.implied_rho), {.tol = 1e-12}).x;
    const double dist = linf_distance(pt.iterate, exact);
    const double kkt = check_kkt(prob.with_rho(rho), pt.iterate, 0.0).max_violation;
    CHECK(dist <= prev);
    CHECK(kkt <= prev_kkt);
    prev = dist;
    prev_kkt = kkt;
  }
}
