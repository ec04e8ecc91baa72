#include "common.hpp"
#include "localpr/experiment.hpp"
#include "localpr/serialize.hpp"

namespace cli {

namespace {

ordered_json trial_json(const localpr::TrialRecord& t) {
  return {{"trial", t.trial},
          {"instance_seed", t.instance_seed},
          {"seed_node", t.seed_node},
          {"good_seed", t.good_seed},
          {"full_recovery", t.full_recovery},
          {"exact_recovery", t.exact_recovery},
          {"target_volume", t.target_volume},
          {"fp_volume", t.fp_volume},
          {"fp_bound", t.fp_bound},
          {"fp_within_bound", t.fp_within_bound},
          {"degree_condition", t.degree_condition},
          {"min_exterior_neighbor_degree", t.min_exterior_neighbor_degree},
          {"support_size", t.support_size},
          {"touched", t.touched},
          {"locality", t.locality},
          {"volume_bound", t.volume_bound},
          {"f1", t.f1},
          {"sweep_f1", t.sweep_f1}};
}

struct Experiment : Command {
  ModelFlags model;
  std::vector<double> gamma_grid;
  std::optional<double> alpha;
  double delta = 0.1;
  std::size_t trials = 30;
  std::size_t threads = 0;
  std::string solver = "l1pr";
  double degree_multiplier = 1.0;
  bool permute = false;
  double eta = 1e-4;
  double min_rho_factor = 0.1;
  double tol = 1e-8;
  std::size_t max_touch = 0;

  explicit Experiment(CLI::App& root)
      : Command(root.add_subcommand(
            "experiment", "Recovery experiment on the local model, or an F1-vs-gamma sweep")) {
    option("gamma-grid", gamma_grid, "Run the gamma sweep over these values (comma separated)")
        ->delimiter(',');
    model.add(*this);
    option("alpha", alpha, "Teleportation (default 0.5, or 0.1 for the gamma sweep)");
    option("delta", delta, "delta in the recovery threshold rho(delta)");
    option("trials", trials, "Independent draws per setting")->check(CLI::PositiveNumber);
    option("threads", threads, "Worker threads (0 = all cores); results do not depend on it");
    option("solver", solver, "Solver for the recovery runs")->check(CLI::IsMember({"l1pr", "appr"}));
    option("degree-multiplier", degree_multiplier, "Constant in the exterior degree condition");
    flag("permute", permute, "Shuffle node ids of every instance");
    option("eta", eta, "Stagewise step for the gamma sweep");
    option("min-rho-factor", min_rho_factor, "Gamma sweep paths stop at rho(delta) times this");
    option("tol", tol, "Relative KKT tolerance for l1pr");
    option("max-touch", max_touch, "Locality budget in touched nodes (0 = off)");
    add_common({"json", "csv"});
  }

  int run() override {
    if (trials == 0) throw UsageError("--trials must be positive");
    return gamma_grid.empty() ? run_recovery() : run_gamma();
  }

  int run_recovery() {
    const localpr::LocalModelParams params = model.resolve();
    localpr::RecoveryOptions opt;
    opt.alpha = alpha.value_or(0.5);
    opt.delta = delta;
    opt.trials = trials;
    opt.seed = rng_seed;
    opt.solver = solver == "appr" ? localpr::SolverKind::Appr : localpr::SolverKind::L1;
    opt.degree_multiplier = degree_multiplier;
    opt.permute = permute;
    opt.threads = threads;
    opt.l1.tol = tol;
    opt.l1.max_touch = max_touch;
    opt.appr.max_touch = max_touch;
    const localpr::RecoverySummary s = localpr::recovery_experiment(params, opt);

    Output sink(out);
    if (format == "csv") {
      write_metadata_comments(sink.stream());
      localpr::write_trials_csv(sink.stream(), s);
    } else {
      ordered_json j = metadata();
      j["summary"] = localpr::to_json(s);
      ordered_json rows = ordered_json::array();
      for (const auto& t : s.trials) rows.push_back(trial_json(t));
      j["trials"] = std::move(rows);
      sink.stream() << j.dump(2) << '\n';
    }
    sink.finish();
    return kExitOk;
  }

  int run_gamma() {
    localpr::GammaSweepOptions opt;
    opt.gammas = gamma_grid;
    opt.blocks = model.blocks.value_or(10);
    opt.k = model.k;
    opt.p = model.p;
    opt.alpha = alpha.value_or(0.1);
    opt.delta = delta;
    opt.trials = trials;
    opt.seed = rng_seed;
    opt.eta = eta;
    opt.min_rho_factor = min_rho_factor;
    opt.threads = threads;
    const std::vector<localpr::GammaRow> rows = localpr::gamma_sweep(opt);

    Output sink(out);
    if (format == "csv") {
      write_metadata_comments(sink.stream());
      localpr::write_gamma_csv(sink.stream(), rows);
    } else {
      ordered_json j = metadata();
      ordered_json arr = ordered_json::array();
      for (const localpr::GammaRow& r : rows) {
        ordered_json row;
        row["gamma"] = r.gamma;
        row["q"] = r.q;
        row["mean_best_f1"] = r.mean_best_f1;
        row["mean_min_conductance_f1"] = r.mean_min_conductance_f1;
        row["recovery"] = localpr::to_json(r.recovery);
        ordered_json paths = ordered_json::array();
        for (const localpr::PathTrial& t : r.paths) {
          paths.push_back({{"best_f1", t.best_f1},
                           {"min_conductance_f1", t.min_conductance_f1},
                           {"min_conductance", t.min_conductance},
                           {"path_points", t.path_points}});
        }
        row["paths"] = std::move(paths);
        arr.push_back(std::move(row));
      }
      j["rows"] = std::move(arr);
      sink.stream() << j.dump(2) << '\n';
    }
    sink.finish();
    return kExitOk;
  }
};

}  // namespace

std::unique_ptr<Command> make_experiment(CLI::App& root) {
  return std::make_unique<Experiment>(root);
}

}  // namespace cli
