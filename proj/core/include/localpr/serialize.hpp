#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "localpr/analysis.hpp"
#include "localpr/experiment.hpp"
#include "localpr/l1_solver.hpp"
#include "localpr/random_model.hpp"
#include "localpr/solve_result.hpp"
#include "localpr/sparse_vector.hpp"

namespace localpr {

/// {"<node>": value, ...} in ascending node order.
nlohmann::ordered_json to_json(const SparseVector& x);
SparseVector sparse_vector_from_json(const nlohmann::json& j);

/// Stats block; wall time only when include_timing is set.
nlohmann::ordered_json to_json(const SolveStats& s, bool include_timing);
nlohmann::ordered_json to_json(const KktReport& r);
nlohmann::ordered_json to_json(const ModelTheory& t);
nlohmann::ordered_json to_json(const LocalModelParams& p);
nlohmann::ordered_json to_json(const ClusterEval& e);
nlohmann::ordered_json to_json(const RecoverySummary& s);

/// Parses a "key = value" text file ('#' comments) into model parameters.
/// Keys: n, k, p, q, background (none|er|sbm), q_bg, p_in, p_out,
/// cluster_size (repeated blocks of that size) or cluster_sizes (comma list).
LocalModelParams model_params_from_config(std::istream& in);
void write_model_config(std::ostream& out, const LocalModelParams& p);

/// rank,node,value,prefix_conductance
void write_sweep_csv(std::ostream& out, const SweepResult& s, const SparseVector& x);

/// One row per trial.
void write_trials_csv(std::ostream& out, const RecoverySummary& s);

/// One row per gamma.
void write_gamma_csv(std::ostream& out, const std::vector<GammaRow>& rows);

}  // namespace localpr
