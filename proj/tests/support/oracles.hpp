#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the solver code; Q is rebuilt from the edge list and every
// optimality check is written out from the subgradient conditions.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "localpr/graph.hpp"

namespace oracle {

struct Dense {
  Eigen::MatrixXd adj;
  Eigen::VectorXd deg;
};

inline Dense dense_of(const localpr::Graph& g) {
  const int n = static_cast<int>(g.num_nodes());
  Dense d{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  for (const localpr::Edge& e : g.edges()) {
    d.adj(e.u, e.v) += e.weight;
    d.adj(e.v, e.u) += e.weight;
  }
  d.deg = d.adj.rowwise().sum();
  return d;
}

inline Eigen::MatrixXd q_matrix(const Dense& d, double alpha) {
  Eigen::MatrixXd lap = -d.adj;
  lap.diagonal() += d.deg;
  Eigen::MatrixXd q = 0.5 * (1.0 - alpha) * lap;
  q.diagonal() += alpha * d.deg;
  return q;
}

/// Minimizer of 1/2 x'Qx - alpha x's + rho alpha sum d_i |x_i| over all of
/// R^n, found by enumerating every sign pattern in {-1, 0, +1}^n, solving the
/// stationarity system on the active set and keeping the pattern whose
/// solution satisfies the full subgradient conditions. Sign is not assumed.
inline std::optional<Eigen::VectorXd> brute_force_l1(const localpr::Graph& g,
                                                    const Eigen::VectorXd& s, double alpha,
                                                    double rho, double slack = 1e-10) {
  const Dense d = dense_of(g);
  const Eigen::MatrixXd q = q_matrix(d, alpha);
  const int n = static_cast<int>(g.num_nodes());
  std::vector<int> sign(n, 0);
  long patterns = 1;
  for (int i = 0; i < n; ++i) patterns *= 3;
  for (long code = 0; code < patterns; ++code) {
    long c = code;
    std::vector<int> active;
    for (int i = 0; i < n; ++i) {
      sign[i] = static_cast<int>(c % 3) - 1;
      c /= 3;
      if (sign[i] != 0) active.push_back(i);
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (!active.empty()) {
      const int m = static_cast<int>(active.size());
      Eigen::MatrixXd qa(m, m);
      Eigen::VectorXd rhs(m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) qa(a, b) = q(active[a], active[b]);
        const int i = active[a];
        rhs(a) = alpha * s(i) - rho * alpha * d.deg(i) * sign[i];
      }
      const Eigen::VectorXd xa = qa.ldlt().solve(rhs);
      bool consistent = true;
      for (int a = 0; a < m; ++a) {
        if (xa(a) * sign[active[a]] <= 0.0) consistent = false;
        x(active[a]) = xa(a);
      }
      if (!consistent) continue;
    }
    const Eigen::VectorXd grad = q * x - alpha * s;
    bool optimal = true;
    for (int i = 0; i < n && optimal; ++i) {
      const double t = rho * alpha * d.deg(i);
      if (sign[i] == 0 && std::abs(grad(i)) > t * (1.0 + slack) + slack) optimal = false;
    }
    if (optimal) return x;
  }
  return std::nullopt;
}

/// Personalized PageRank by power iteration on the lazy walk,
///   p <- alpha s + (1 - alpha) (p + A D^-1 p) / 2,
/// returned as x = D^-1 p.
inline Eigen::VectorXd power_iteration_ppr(const localpr::Graph& g, const Eigen::VectorXd& s,
                                           double alpha, int max_iter = 100000,
                                           double tol = 1e-15) {
  const Dense d = dense_of(g);
  const Eigen::VectorXd inv = d.deg.cwiseInverse();
  Eigen::VectorXd p = s;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd walk = d.adj * inv.cwiseProduct(p);
    const Eigen::VectorXd next = alpha * s + (1.0 - alpha) * 0.5 * (p + walk);
    const double change = (next - p).cwiseAbs().maxCoeff();
    p = next;
    if (change < tol) break;
  }
  return inv.cwiseProduct(p);
}

/// Connected graph on n nodes: random spanning tree plus extra edges, each
/// other pair kept with probability `extra`. Weights are 1 unless `weighted`.
inline localpr::Graph random_connected(std::uint64_t seed, localpr::NodeId n, double extra,
                                       bool weighted = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<localpr::Edge> edges;
  auto weight = [&] { return weighted ? 0.5 + 2.0 * unif(rng) : 1.0; };
  for (localpr::NodeId v = 1; v < n; ++v) {
    const auto parent = static_cast<localpr::NodeId>(unif(rng) * v);
    edges.push_back({parent, v, weight()});
  }
  for (localpr::NodeId u = 0; u < n; ++u) {
    for (localpr::NodeId v = u + 1; v < n; ++v) {
      if (unif(rng) < extra) edges.push_back({u, v, weight()});
    }
  }
  return localpr::Graph::from_edges(n, edges);
}

}  // namespace oracle
