#include "localpr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "localpr/errors.hpp"
#include "localpr/parallel.hpp"
#include "localpr/rng.hpp"

namespace localpr {

namespace {

NodeId pick_seed(const Instance& inst, std::uint64_t instance_seed, bool& good) {
  if (auto s = find_good_seed(inst.graph, inst.target)) {
    good = true;
    return *s;
  }
  good = false;
  Rng rng(derive_seed(instance_seed, 1));
  return inst.target.ids()[rng.uniform_index(inst.target.size())];
}

double mean_of(const std::vector<TrialRecord>& trials, double TrialRecord::*field) {
  if (trials.empty()) return 0.0;
  double s = 0.0;
  for (const TrialRecord& t : trials) s += t.*field;
  return s / static_cast<double>(trials.size());
}

}  // namespace

RecoverySummary recovery_experiment(const LocalModelParams& params,
                                    const RecoveryOptions& options) {
  params.validate();
  if (options.trials == 0) throw InvalidArgument("trials must be positive");
  RecoverySummary sum;
  sum.params = params;
  sum.options = options;
  sum.theory = theory(params, options.alpha, options.delta);
  sum.rho = sum.theory.rho_delta;
  sum.trials.resize(options.trials);
  const double degree_floor = sum.theory.degree_condition(options.degree_multiplier);

  parallel_for(options.trials, options.threads, [&](std::size_t t) {
    TrialRecord& rec = sum.trials[t];
    rec.trial = t;
    rec.instance_seed = derive_seed(options.seed, t);
    const Instance inst = generate(params, rec.instance_seed, options.permute);
    const Graph& g = inst.graph;
    const NodeSet& target = inst.target;
    rec.seed_node = pick_seed(inst, rec.instance_seed, rec.good_seed);

    const PageRankProblem prob(g, SeedVector::single(rec.seed_node), options.alpha, sum.rho);
    const SolveResult res = options.solver == SolverKind::L1 ? solve_l1(prob, options.l1)
                                                             : appr_solve(prob, options.appr);
    const NodeSet supp = res.x.support();
    rec.full_recovery = target.is_subset_of(supp);
    rec.exact_recovery = supp == target;
    rec.target_volume = volume(g, target);
    rec.fp_volume = volume(g, supp.set_difference(target));
    rec.fp_bound = options.solver == SolverKind::L1
                       ? sum.theory.fp_volume_bound(rec.target_volume)
                       : sum.theory.appr_fp_volume_bound(rec.target_volume);
    rec.fp_within_bound = rec.fp_volume <= rec.fp_bound;

    const NodeSet exterior = neighborhood(g, target);
    rec.degree_condition = true;
    rec.min_exterior_neighbor_degree = 0.0;
    bool first = true;
    for (NodeId j : exterior) {
      const double d = g.degree(j);
      if (first || d < rec.min_exterior_neighbor_degree) rec.min_exterior_neighbor_degree = d;
      first = false;
      if (!(d > degree_floor)) rec.degree_condition = false;
    }

    rec.support_size = supp.size();
    rec.touched = res.stats.touched.size();
    rec.locality = is_local(g, res.x, prob.seed.nodes(), res.stats.touched);
    rec.volume_bound =
        options.solver == SolverKind::L1 ? volume_bound(prob, res.x).holds : true;
    if (!supp.empty()) {
      rec.f1 = evaluate(g, supp, target).f1;
      rec.sweep_f1 = evaluate(g, sweep_cut(g, res.x).best_set, target).f1;
    }
  });

  for (const TrialRecord& rec : sum.trials) {
    if (rec.full_recovery) {
      ++sum.full_recoveries;
      if (rec.fp_within_bound) ++sum.fp_within_bound;
    }
    if (rec.exact_recovery) ++sum.exact_recoveries;
    if (rec.good_seed && rec.degree_condition) {
      ++sum.qualifying;
      if (rec.exact_recovery) ++sum.exact_qualifying;
    }
  }
  sum.full_recovery_ci = wilson_interval(sum.full_recoveries, sum.trials.size());
  sum.exact_recovery_ci = wilson_interval(sum.exact_qualifying, sum.qualifying);
  sum.mean_fp_volume = mean_of(sum.trials, &TrialRecord::fp_volume);
  sum.mean_fp_bound = mean_of(sum.trials, &TrialRecord::fp_bound);
  sum.mean_f1 = mean_of(sum.trials, &TrialRecord::f1);
  sum.mean_sweep_f1 = mean_of(sum.trials, &TrialRecord::sweep_f1);
  return sum;
}

PathTrial evaluate_path(const Graph& g, const SolutionPath& path, const NodeSet& target) {
  PathTrial out;
  out.path_points = path.points.size();
  double best_phi = std::numeric_limits<double>::infinity();
  NodeSet last;
  double last_f1 = 0.0;
  std::optional<double> last_phi;
  for (const PathPoint& pt : path.points) {
    if (pt.iterate.empty()) continue;
    NodeSet supp = pt.iterate.support();
    // Stored points between support changes share a support; reuse the metrics.
    if (!(supp == last)) {
      const ClusterEval e = evaluate(g, supp, target);
      last = std::move(supp);
      last_f1 = e.f1;
      last_phi = e.conductance;
    }
    out.best_f1 = std::max(out.best_f1, last_f1);
    if (last_phi && *last_phi < best_phi) {
      best_phi = *last_phi;
      out.min_conductance = best_phi;
      out.min_conductance_f1 = last_f1;
    }
  }
  return out;
}

std::vector<GammaRow> gamma_sweep(const GammaSweepOptions& options) {
  if (options.trials == 0) throw InvalidArgument("trials must be positive");
  if (options.gammas.empty()) throw InvalidArgument("gamma grid is empty");
  std::vector<GammaRow> rows;
  for (std::size_t gi = 0; gi < options.gammas.size(); ++gi) {
    GammaRow row;
    row.gamma = options.gammas[gi];
    row.q = sbm_q_for_gamma(options.blocks, options.k, options.p, row.gamma);
    const LocalModelParams params =
        LocalModelParams::sbm(options.blocks, options.k, options.p, row.q);
    const ModelTheory th = theory(params, options.alpha, options.delta);
    const std::uint64_t row_seed = derive_seed(options.seed, gi);

    row.paths.resize(options.trials);
    parallel_for(options.trials, options.threads, [&](std::size_t t) {
      const std::uint64_t instance_seed = derive_seed(row_seed, t);
      const Instance inst = generate(params, instance_seed);
      bool good = false;
      const NodeId seed = pick_seed(inst, instance_seed, good);
      const PageRankProblem prob(inst.graph, SeedVector::single(seed), options.alpha, 0.0);
      StagewiseOptions so;
      so.eta = options.eta;
      so.stop.min_rho = options.min_rho_factor * th.rho_delta;
      row.paths[t] = evaluate_path(inst.graph, stagewise_path(prob, so), inst.target);
    });
    for (const PathTrial& p : row.paths) {
      row.mean_best_f1 += p.best_f1;
      row.mean_min_conductance_f1 += p.min_conductance_f1;
    }
    row.mean_best_f1 /= static_cast<double>(options.trials);
    row.mean_min_conductance_f1 /= static_cast<double>(options.trials);

    RecoveryOptions ro;
    ro.alpha = options.alpha;
    ro.delta = options.delta;
    ro.trials = options.trials;
    ro.seed = row_seed;
    ro.threads = options.threads;
    row.recovery = recovery_experiment(params, ro);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace localpr
