#include <cmath>

#include "common.hpp"
#include "localpr/analysis.hpp"
#include "localpr/io.hpp"
#include "localpr/l1_solver.hpp"
#include "localpr/serialize.hpp"

namespace cli {

namespace {

/// Picks a solution out of a `solve` JSON file: the result whose rho equals
/// `rho` when given, otherwise the first one.
localpr::SparseVector solution_from_file(const std::string& path, std::optional<double> rho) {
  const nlohmann::json j = load_json(path);
  if (!j.contains("results") || !j["results"].is_array() || j["results"].empty()) {
    throw UsageError("'" + path + "' holds no solve results");
  }
  for (const auto& r : j["results"]) {
    if (!rho || r.value("rho", -1.0) == *rho) {
      try {
        return localpr::sparse_vector_from_json(r.at("solution"));
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("'" + path + "': " + e.what());
      }
    }
  }
  throw UsageError("'" + path + "' has no result at the requested rho");
}

struct Sweep : Command {
  std::string graph;
  std::string solution;
  std::vector<localpr::NodeId> seed_nodes;
  double alpha = 0.15;
  std::optional<double> rho;
  double tol = 1e-8;

  explicit Sweep(CLI::App& root)
      : Command(root.add_subcommand("sweep", "Sweep cut over a solution vector")) {
    option("graph", graph, "Edge list file")->required();
    option("solution", solution, "JSON written by 'solve' (otherwise solve here with l1pr)");
    option("seed-node", seed_nodes, "Seed node id(s) when solving here");
    option("alpha", alpha, "Teleportation parameter when solving here");
    option("rho", rho, "rho to solve at, or to select from --solution");
    option("tol", tol, "Relative KKT tolerance when solving here");
    add_common({"json", "csv"});
  }

  int run() override {
    const localpr::Graph g = load_graph(graph);
    localpr::SparseVector x;
    if (!solution.empty()) {
      x = solution_from_file(solution, rho);
    } else {
      if (seed_nodes.empty() || !rho) throw UsageError("give --solution, or --seed-node and --rho");
      for (localpr::NodeId s : seed_nodes) {
        if (s >= g.num_nodes()) throw UsageError("seed node " + std::to_string(s) + " is not in the graph");
      }
      const localpr::PageRankProblem prob(
          g, localpr::SeedVector::uniform(localpr::NodeSet(seed_nodes)), alpha, *rho);
      x = localpr::solve_l1(prob, {tol}).x;
    }
    const localpr::SweepResult s = localpr::sweep_cut(g, x);

    Output sink(out);
    if (format == "csv") {
      write_metadata_comments(sink.stream());
      localpr::write_sweep_csv(sink.stream(), s, x);
    } else {
      ordered_json j = metadata();
      j["best_size"] = s.best_size;
      j["best_conductance"] = std::isinf(s.best_conductance) ? ordered_json(nullptr)
                                                             : ordered_json(s.best_conductance);
      j["best_set"] = std::vector<localpr::NodeId>(s.best_set.begin(), s.best_set.end());
      ordered_json prof = ordered_json::array();
      for (std::size_t r = 0; r < s.order.size(); ++r) {
        const double phi = s.prefix_conductance[r];
        prof.push_back({{"node", s.order[r]},
                        {"value", x[s.order[r]]},
                        {"prefix_conductance", std::isinf(phi) ? ordered_json(nullptr) : ordered_json(phi)}});
      }
      j["profile"] = std::move(prof);
      sink.stream() << j.dump(2) << '\n';
    }
    sink.finish();
    return kExitOk;
  }
};

struct Eval : Command {
  std::string graph;
  std::string target;
  std::string recovered;
  std::string solution;
  std::optional<double> rho;
  std::string round = "support";

  explicit Eval(CLI::App& root)
      : Command(root.add_subcommand("eval", "Volume-weighted precision, recall and F1 against a target")) {
    option("graph", graph, "Edge list file")->required();
    option("target", target, "Target node set file")->required();
    option("recovered", recovered, "Recovered node set file");
    option("solution", solution, "JSON written by 'solve'; evaluated via --round");
    option("rho", rho, "Select the result at this rho from --solution");
    option("round", round, "How to turn a solution into a set")
        ->check(CLI::IsMember({"support", "sweep"}));
    add_common({"json", "csv"});
  }

  int run() override {
    const localpr::Graph g = load_graph(graph);
    const localpr::NodeSet tgt = load_nodes(target);
    localpr::NodeSet rec;
    if (!recovered.empty() == !solution.empty()) {
      throw UsageError("give exactly one of --recovered and --solution");
    }
    if (!recovered.empty()) {
      rec = load_nodes(recovered);
    } else {
      const localpr::SparseVector x = solution_from_file(solution, rho);
      rec = round == "sweep" && !x.empty() ? localpr::sweep_cut(g, x).best_set : x.support();
    }
    for (localpr::NodeId v : rec.set_union(tgt)) {
      if (v >= g.num_nodes()) throw UsageError("node " + std::to_string(v) + " is not in the graph");
    }
    const localpr::ClusterEval e = localpr::evaluate(g, rec, tgt);

    Output sink(out);
    if (format == "csv") {
      write_metadata_comments(sink.stream());
      sink.stream() << "precision,recall,f1,tp_volume,fp_volume,recovered_volume,target_volume,"
                       "conductance,recovered_size\n";
      sink.stream() << localpr::format_double(e.precision) << ','
                    << localpr::format_double(e.recall) << ',' << localpr::format_double(e.f1)
                    << ',' << localpr::format_double(e.tp_volume) << ','
                    << localpr::format_double(e.fp_volume) << ','
                    << localpr::format_double(e.recovered_volume) << ','
                    << localpr::format_double(e.target_volume) << ','
                    << (e.conductance ? localpr::format_double(*e.conductance) : "") << ','
                    << rec.size() << '\n';
    } else {
      ordered_json j = metadata();
      j["eval"] = localpr::to_json(e);
      j["recovered_size"] = rec.size();
      sink.stream() << j.dump(2) << '\n';
    }
    sink.finish();
    return kExitOk;
  }
};

}  // namespace

std::unique_ptr<Command> make_sweep(CLI::App& root) { return std::make_unique<Sweep>(root); }
std::unique_ptr<Command> make_eval(CLI::App& root) { return std::make_unique<Eval>(root); }

}  // namespace cli
