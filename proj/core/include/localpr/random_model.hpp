#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "localpr/graph.hpp"

namespace localpr {

namespace background {
/// No edges among exterior nodes.
struct None {};
/// Every exterior pair independently with probability q_bg.
struct ErdosRenyi {
  double q_bg = 0.0;
};
/// Exterior nodes split into consecutive blocks; within-block pairs with
/// p_in, across blocks with p_out. cluster_sizes must sum to n - k.
struct Sbm {
  std::vector<std::size_t> cluster_sizes;
  double p_in = 0.0;
  double p_out = 0.0;
};
}  // namespace background

using Background = std::variant<background::None, background::ErdosRenyi, background::Sbm>;

/// Local random model: target K = {0..k-1}; pairs inside K appear with
/// probability p, pairs between K and its complement with probability q, and
/// pairs among the complement follow `background`.
struct LocalModelParams {
  std::size_t n = 0;
  std::size_t k = 0;
  double p = 0.0;
  double q = 0.0;
  Background background = background::None{};

  /// Throws InvalidArgument on any out-of-range field.
  void validate() const;

  /// Stochastic block model with r equal blocks of size k, one of them the
  /// target, and the same (p, q) inside and across blocks.
  static LocalModelParams sbm(std::size_t blocks, std::size_t k, double p, double q);
};

struct Instance {
  Graph graph;
  NodeSet target;
};

/// Draws one graph. Deterministic in (params, seed). When `permute` is set,
/// node ids are shuffled afterwards and the target relabelled.
Instance generate(const LocalModelParams& params, std::uint64_t seed, bool permute = false);

/// Expected-adjacency graph. Dense; throws InvalidArgument when n > max_nodes.
Graph population_graph(const LocalModelParams& params, std::size_t max_nodes = 5000);

/// Closed-form quantities of the model for a teleportation alpha.
struct ModelTheory {
  double alpha = 0.0;
  double delta = 0.0;
  double d_bar = 0.0;                // p(k-1) + q(n-k)
  double gamma = 0.0;                // p(k-1) / d_bar
  double expected_conductance = 0.0; // 1 - gamma
  double min_exterior_degree = 0.0;  // min expected degree over the complement
  double rho_delta = 0.0;            // recovery threshold at `delta`
  double rho_sharp = 0.0;            // lower end of the population exact-recovery window
  double rho_natural = 0.0;          // upper end
  double u = 0.0;                    // population solution = u 1_S + v 1_K
  double v = 0.0;                    // v at rho_delta

  /// ((1-a)/(1+a))^2 ((1-d)/(1+d))^2 gamma p / ((1+d) d_bar^2)
  double rho_at(double delta) const;
  double v_at(double rho) const;
  /// Vol(K) [((1+a)/(1-a))^2 ((1+d)/(1-d))^3 / gamma^2 - 1]
  double fp_volume_bound(double target_volume) const;
  /// Same bound after replacing rho by (1-a) rho / 2, as needed for the push
  /// algorithm's output.
  double appr_fp_volume_bound(double target_volume) const;
  /// multiplier * (0.5 c + 1) / (gamma p), where q = c / n.
  double degree_condition(double multiplier) const;

  double p = 0.0;
  double q = 0.0;
  std::size_t n = 0;
  std::size_t k = 0;
};

/// Throws InvalidArgument unless 0 < alpha < 1 and 0 < delta < 1.
ModelTheory theory(const LocalModelParams& params, double alpha, double delta);

/// q such that the model's gamma equals `gamma` for an SBM with `blocks`
/// blocks of size k and within-block probability p.
double sbm_q_for_gamma(std::size_t blocks, std::size_t k, double p, double gamma);

/// Some node of `target` with no edge leaving `target` (lowest id), if any.
std::optional<NodeId> find_good_seed(const Graph& g, const NodeSet& target);

}  // namespace localpr
