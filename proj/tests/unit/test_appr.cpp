#include <doctest.h>

#include "localpr/analysis.hpp"
#include "localpr/appr.hpp"
#include "localpr/l1_solver.hpp"
#include "oracles.hpp"

using namespace localpr;

TEST_CASE("large rho gives no pushes") {
  Graph g = oracle::random_connected(1, 20, 0.2);
  PageRankProblem prob(g, SeedVector::single(0), 0.2, 1.01 / g.degree(0));
  SolveResult r = appr_solve(prob);
  CHECK(r.x.empty());
  CHECK(r.stats.iterations == 0);
}

TEST_CASE("first push from zero") {
  Graph g = oracle::random_connected(2, 15, 0.2, true);
  const double alpha = 0.2;
  PageRankProblem prob(g, SeedVector::single(3), alpha, 1e-4);
  ApprState st(prob);
  st.push(3);
  CHECK(st.value(3) == doctest::Approx(alpha / g.degree(3)).epsilon(1e-14));
  const SparseVector x = st.solution();
  CHECK(gradient(prob, x, 3) == doctest::Approx(0.5 * (1.0 - alpha) * -alpha).epsilon(1e-12));
  CHECK(st.cached_gradient(3) == doctest::Approx(gradient(prob, x, 3)).epsilon(1e-12));
}

TEST_CASE("push identity and cached gradients") {
  Graph g = oracle::random_connected(3, 40, 0.1, true);
  const double alpha = 0.35;
  PageRankProblem prob(g, SeedVector::single(0), alpha, 1e-3);
  ApprState st(prob);
  // Push the seed and a handful of neighbors, checking the identity each time.
  std::vector<NodeId> order{0, g.neighbors(0)[0], 0, g.neighbors(0).back(), 0};
  for (NodeId i : order) {
    const double before = gradient(prob, st.solution(), i);
    if (!(before < 0.0)) continue;
    st.push(i);
    const SparseVector x = st.solution();
    CHECK(gradient(prob, x, i) == doctest::Approx(0.5 * (1.0 - alpha) * before).epsilon(1e-12));
    for (NodeId t : st.touched()) {
      CHECK(st.cached_gradient(t) == doctest::Approx(gradient(prob, x, t)).epsilon(1e-10));
      CHECK(st.cached_gradient(t) <= 0.0);
    }
  }
}

TEST_CASE("termination criterion holds exactly") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    Graph g = oracle::random_connected(50 + t, 80, 0.05);
    PageRankProblem prob(g, SeedVector::single(static_cast<NodeId>(t)), 0.15, 2e-3);
    for (PushOrder order : {PushOrder::Fifo, PushOrder::Lifo}) {
      SolveResult r = appr_solve(prob, {.order = order});
      CHECK(r.x.is_nonnegative());
      ApprResidualReport rep = appr_residual_report(prob, r.x);
      CHECK(rep.terminated());
      CHECK(is_local(g, r.x, prob.seed.nodes(), r.stats.touched));
    }
  }
}

TEST_CASE("residual report flags") {
  Graph g = oracle::random_connected(7, 20, 0.2);
  PageRankProblem prob(g, SeedVector::single(0), 0.2, 0.5 / g.degree(0));
  ApprResidualReport zero = appr_residual_report(prob, SparseVector{});
  REQUIRE(zero.flagged.size() == 1);
  CHECK(zero.flagged[0] == 0);
  CHECK(zero.max_scaled_residual == doctest::Approx(0.2 / g.degree(0)));

  SolveResult r = appr_solve(prob);
  CHECK(appr_residual_report(prob, r.x).terminated());
  // Removing mass from the seed pushes its gradient back under the threshold.
  std::vector<SparseVector::Entry> e(r.x.begin(), r.x.end());
  for (auto& entry : e) {
    if (entry.node == 0) entry.value *= 0.1;
  }
  CHECK_FALSE(appr_residual_report(prob, SparseVector(e)).terminated());
}

TEST_CASE("support sandwich on small random graphs") {
  for (std::uint64_t t = 0; t < 30; ++t) {
    Graph g = oracle::random_connected(500 + t, 20, 0.15);
    SandwichReport rep = check_sandwich(g, 0, 0.2, 0.01);
    CHECK(rep.passed);
    CHECK(rep.l1_support <= rep.appr_support);
    CHECK(rep.appr_support <= rep.l1_lower_support);
  }
}

TEST_CASE("fifo and lifo both satisfy the sandwich") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    Graph g = oracle::random_connected(600 + t, 40, 0.08);
    const double alpha = 0.3, rho = 0.004;
    PageRankProblem prob(g, SeedVector::single(1), alpha, rho);
    const NodeSet lo = solve_l1(prob).x.support();
    const NodeSet hi = solve_l1(prob.with_rho(0.5 * (1.0 - alpha) * rho)).x.support();
    for (PushOrder order : {PushOrder::Fifo, PushOrder::Lifo}) {
      const NodeSet mid = appr_solve(prob, {.order = order}).x.support();
      CHECK(lo.is_subset_of(mid));
      CHECK(mid.is_subset_of(hi));
    }
  }
}
