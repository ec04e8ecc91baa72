#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "localpr/analysis.hpp"
#include "localpr/appr.hpp"
#include "localpr/l1_solver.hpp"
#include "localpr/random_model.hpp"
#include "localpr/stagewise.hpp"

namespace localpr {

enum class SolverKind { L1, Appr };

struct RecoveryOptions {
  double alpha = 0.5;
  double delta = 0.1;
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  SolverKind solver = SolverKind::L1;
  /// Multiplier standing in for the unspecified universal constant of the
  /// exterior degree condition.
  double degree_multiplier = 1.0;
  bool permute = false;
  std::size_t threads = 0;
  L1SolveOptions l1;
  ApprOptions appr;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t instance_seed = 0;
  NodeId seed_node = 0;
  bool good_seed = false;
  bool full_recovery = false;    // K subset of supp
  bool exact_recovery = false;   // supp == K
  double target_volume = 0.0;
  double fp_volume = 0.0;
  double fp_bound = 0.0;
  bool fp_within_bound = false;
  bool degree_condition = false; // every exterior neighbor of K meets it
  double min_exterior_neighbor_degree = 0.0;
  std::size_t support_size = 0;
  std::size_t touched = 0;
  bool locality = false;
  bool volume_bound = false;     // l1 solver only; true for APPR runs
  double f1 = 0.0;               // support as recovered set
  double sweep_f1 = 0.0;         // min-conductance sweep set
};

struct RecoverySummary {
  LocalModelParams params;
  RecoveryOptions options;
  ModelTheory theory;
  double rho = 0.0;
  std::vector<TrialRecord> trials;

  std::size_t full_recoveries = 0;
  std::size_t exact_recoveries = 0;
  std::size_t qualifying = 0;        // good seed and degree condition
  std::size_t exact_qualifying = 0;  // exact recoveries among qualifying
  std::size_t fp_within_bound = 0;   // among full recoveries
  Interval full_recovery_ci;
  Interval exact_recovery_ci;        // over qualifying trials
  double mean_fp_volume = 0.0;
  double mean_fp_bound = 0.0;
  double mean_f1 = 0.0;
  double mean_sweep_f1 = 0.0;
};

/// For each trial: draw an instance from an independent stream, pick a good
/// seed (or a uniform target node when none exists), solve at rho(delta) with
/// the selected solver, and record recovery, false-positive volume against
/// its bound, and the exterior degree condition.
RecoverySummary recovery_experiment(const LocalModelParams& params,
                                    const RecoveryOptions& options);

struct PathTrial {
  double best_f1 = 0.0;
  double min_conductance_f1 = 0.0;
  double min_conductance = 0.0;
  std::size_t path_points = 0;
};

/// Best-on-path F1 and F1 of the minimum-conductance support along one
/// stagewise path.
PathTrial evaluate_path(const Graph& g, const SolutionPath& path, const NodeSet& target);

struct GammaSweepOptions {
  std::vector<double> gammas{0.44, 0.65, 0.86, 0.91};
  std::size_t blocks = 10;
  std::size_t k = 20;
  double p = 0.5;
  double alpha = 0.1;
  double delta = 0.1;
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  double eta = 1e-4;
  /// The stagewise path stops at rho(delta) times this factor.
  double min_rho_factor = 0.1;
  std::size_t threads = 0;
};

struct GammaRow {
  double gamma = 0.0;
  double q = 0.0;
  double mean_best_f1 = 0.0;
  double mean_min_conductance_f1 = 0.0;
  std::vector<PathTrial> paths;
  RecoverySummary recovery;
};

/// One row per gamma: SBM with `blocks` blocks of size k, q chosen so the
/// target's expected gamma matches.
std::vector<GammaRow> gamma_sweep(const GammaSweepOptions& options);

}  // namespace localpr
