// Acceptance run: one PASS/FAIL line per criterion.
// Every reference value is computed here from first principles; the library
// is only asked for solver output, instances and the experiment harness.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "localpr/appr.hpp"
#include "localpr/experiment.hpp"
#include "localpr/l1_solver.hpp"
#include "localpr/random_model.hpp"
#include "localpr/rng.hpp"
#include "localpr/stagewise.hpp"
#include "oracles.hpp"

using namespace localpr;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit = 0.0;  // 0 = no runtime requirement
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Test-side reference quantities

struct Theory {
  double d_bar, gamma, rho;
  double alpha, delta;
};

Theory theory_of(std::size_t n, std::size_t k, double p, double q, double alpha, double delta) {
  Theory t{};
  t.alpha = alpha;
  t.delta = delta;
  t.d_bar = p * static_cast<double>(k - 1) + q * static_cast<double>(n - k);
  t.gamma = p * static_cast<double>(k - 1) / t.d_bar;
  const double a = (1 - alpha) / (1 + alpha), b = (1 - delta) / (1 + delta);
  t.rho = a * a * b * b * t.gamma * p / ((1 + delta) * t.d_bar * t.d_bar);
  return t;
}

double fp_bound(const Theory& t, double vol_k, bool appr) {
  const double a = (1 + t.alpha) / (1 - t.alpha), b = (1 + t.delta) / (1 - t.delta);
  double lead = a * a * b * b * b / (t.gamma * t.gamma);
  if (appr) lead *= 2.0 / (1 - t.alpha);
  return vol_k * (lead - 1.0);
}

double vol_of(const Graph& g, const NodeSet& s) {
  double v = 0;
  for (NodeId i : s) v += g.degree(i);
  return v;
}

// Tallies shared across suites.
struct VolumeTally {
  std::size_t solves = 0, failures = 0;
  double worst_ratio = 0.0;
  void record(const PageRankProblem& prob, const SparseVector& x) {
    double vol = 0, dx = 0;
    for (const auto& e : x) {
      vol += prob.g().degree(e.node);
      dx += prob.g().degree(e.node) * e.value;
    }
    const double bound = (1.0 - dx) / prob.rho;
    ++solves;
    if (!(vol <= bound)) ++failures;
    if (bound > 0) worst_ratio = std::max(worst_ratio, vol / bound);
  }
} volume_tally;

struct LocalityTally {
  std::size_t solves = 0, failures = 0;
  void record(const Graph& g, const SparseVector& x, const NodeSet& seeds, const NodeSet& touched) {
    std::vector<NodeId> allowed;
    auto add = [&](NodeId v) {
      allowed.push_back(v);
      for (NodeId u : g.neighbors(v)) allowed.push_back(u);
    };
    for (const auto& e : x) add(e.node);
    for (NodeId s : seeds) add(s);
    std::sort(allowed.begin(), allowed.end());
    ++solves;
    for (NodeId v : touched) {
      if (!std::binary_search(allowed.begin(), allowed.end(), v)) {
        ++failures;
        return;
      }
    }
  }
} locality_tally;

SolveResult l1(const PageRankProblem& prob) {
  SolveResult r = solve_l1(prob);
  volume_tally.record(prob, r.x);
  return r;
}

NodeSet support(const SparseVector& x) { return x.support(); }

// Max scaled KKT violation from a dense gradient.
double dense_kkt(const Graph& g, const SeedVector& s, double alpha, double rho,
                 const SparseVector& x) {
  const oracle::Dense d = oracle::dense_of(g);
  const Eigen::MatrixXd q = oracle::q_matrix(d, alpha);
  const int n = static_cast<int>(g.num_nodes());
  Eigen::VectorXd xv = Eigen::VectorXd::Zero(n), sv = Eigen::VectorXd::Zero(n);
  for (const auto& e : x) xv(e.node) = e.value;
  for (const auto& m : s.masses()) sv(m.node) = m.mass;
  const Eigen::VectorXd grad = q * xv - alpha * sv;
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    const double t = rho * alpha * d.deg(i);
    double v;
    if (xv(i) > 0) {
      v = std::abs(grad(i) + t) / t;
    } else if (xv(i) == 0) {
      v = std::max(0.0, std::abs(grad(i)) - t) / t;
    } else {
      v = std::numeric_limits<double>::infinity();
    }
    worst = std::max(worst, v);
  }
  return worst;
}

LocalModelParams random_local_model(std::mt19937_64& rng, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> blocks(3, max_n / 20);
  std::uniform_real_distribution<double> p(0.3, 0.8), c(0.5, 3.0);
  const std::size_t r = blocks(rng);
  const double n = 20.0 * static_cast<double>(r);
  return LocalModelParams::sbm(r, 20, p(rng), c(rng) / n);
}

NodeId seed_for(const Instance& inst) { return find_good_seed(inst.graph, inst.target).value_or(0); }

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  Outcome o{1, "solver matches brute-force QP oracle on small graphs"};
  o.limit = 60;
  double worst = 0;
  std::size_t solves = 0, misses = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const NodeId n = static_cast<NodeId>(2 + i % 6);
    const Graph g = oracle::random_connected(1000 + i, n, 0.35, i % 2 == 1);
    const NodeId seed = static_cast<NodeId>(i % n);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    s(seed) = 1.0;
    for (double alpha : {0.15, 0.5, 0.85}) {
      for (double f : {0.3, 0.7, 1.2}) {
        const double rho = f / g.degree(seed);
        const PageRankProblem prob(g, SeedVector::single(seed), alpha, rho);
        const SparseVector x = l1(prob).x;
        const auto ref = oracle::brute_force_l1(g, s, alpha, rho);
        ++solves;
        if (!ref) {
          ++misses;
          continue;
        }
        for (NodeId v = 0; v < n; ++v) worst = std::max(worst, std::abs(x[v] - (*ref)(v)));
      }
    }
  }
  o.passed = misses == 0 && worst <= 1e-8;
  o.detail = "max l_inf error " + fmt(worst) + " over " + std::to_string(solves) + " solves, " +
             std::to_string(misses) + " oracle misses (tol 1e-8)";
  return o;
}

Outcome kkt_suite() {
  Outcome o{2, "KKT conditions hold on a randomized corpus"};
  o.limit = 60;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> alpha_d(0.05, 0.95), logf(std::log(1e-3), std::log(0.9));
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    Graph g;
    if (i % 2 == 0) {
      const NodeId n = static_cast<NodeId>(std::uniform_int_distribution<int>(10, 300)(rng));
      g = oracle::random_connected(rng(), n, 3.0 / n, i % 4 == 0);
    } else {
      g = generate(random_local_model(rng, 300), rng()).graph;
    }
    std::uniform_int_distribution<NodeId> node(0, g.num_nodes() - 1);
    std::vector<NodeId> seeds;
    const int count = 1 + i % 3;
    for (int c = 0; c < count; ++c) {
      const NodeId v = node(rng);
      if (g.degree(v) > 0) seeds.push_back(v);
    }
    if (seeds.empty()) seeds.push_back(0);
    const NodeSet seed_set(seeds);
    double d_max = 0;
    for (NodeId v : seed_set) d_max = std::max(d_max, g.degree(v));
    const double alpha = alpha_d(rng), rho = std::exp(logf(rng)) / d_max;
    const SeedVector s = SeedVector::uniform(seed_set);
    const PageRankProblem prob(g, s, alpha, rho);
    worst = std::max(worst, dense_kkt(g, s, alpha, rho, l1(prob).x));
  }
  o.passed = worst <= 1e-8;
  o.detail = "max scaled violation " + fmt(worst) + " over 500 solves (tol 1e-8)";
  return o;
}

Outcome monotone_path() {
  Outcome o{3, "solutions nonnegative and nondecreasing as rho decreases"};
  o.limit = 120;
  std::mt19937_64 rng(33);
  double most_negative = 0, worst_drop = 0;
  for (int i = 0; i < 50; ++i) {
    Graph g;
    if (i % 2 == 0) {
      const NodeId n = static_cast<NodeId>(std::uniform_int_distribution<int>(20, 400)(rng));
      g = oracle::random_connected(rng(), n, 2.5 / n, i % 4 == 0);
    } else {
      g = generate(random_local_model(rng, 500), rng()).graph;
    }
    const NodeId seed = std::uniform_int_distribution<NodeId>(0, g.num_nodes() - 1)(rng);
    const double alpha = i % 3 == 0 ? 0.15 : (i % 3 == 1 ? 0.5 : 0.85);
    SparseVector prev;
    for (int j = 0; j < 10; ++j) {
      const double f = 0.9 * std::pow(0.005 / 0.9, j / 9.0);
      const PageRankProblem prob(g, SeedVector::single(seed), alpha, f / g.degree(seed));
      const SparseVector x = l1(prob).x;
      for (const auto& e : x) most_negative = std::min(most_negative, e.value);
      for (const auto& e : prev) worst_drop = std::max(worst_drop, e.value - x[e.node]);
      prev = x;
    }
  }
  o.passed = most_negative >= -1e-10 && worst_drop <= 1e-10;
  o.detail = "min entry " + fmt(most_negative) + ", max decrease " + fmt(worst_drop) +
             " over 500 solves (tol 1e-10)";
  return o;
}

Outcome sandwich() {
  Outcome o{4, "l1 support inside push support inside l1 support at (1-alpha)rho/2"};
  o.limit = 180;
  std::mt19937_64 rng(44);
  std::size_t checks = 0, failures = 0;
  for (int i = 0; i < 100; ++i) {
    const LocalModelParams params = random_local_model(rng, 500);
    const Instance inst = generate(params, rng());
    const NodeId seed = seed_for(inst);
    for (double alpha : {0.2, 0.5}) {
      const double rho = theory_of(params.n, params.k, params.p, params.q, alpha, 0.1).rho;
      const PageRankProblem prob(inst.graph, SeedVector::single(seed), alpha, rho);
      const SolveResult hi = l1(prob);
      const SolveResult mid = appr_solve(prob);
      const SolveResult lo = l1(prob.with_rho(0.5 * (1 - alpha) * rho));
      for (const SolveResult* r : {&hi, &mid, &lo}) {
        locality_tally.record(inst.graph, r->x, NodeSet{seed}, r->stats.touched);
      }
      ++checks;
      if (!support(hi.x).is_subset_of(support(mid.x)) ||
          !support(mid.x).is_subset_of(support(lo.x))) {
        ++failures;
      }
    }
  }
  o.passed = failures == 0;
  o.detail = std::to_string(failures) + " failures over " + std::to_string(checks) + " checks";
  return o;
}

Outcome population_closed_form() {
  Outcome o{6, "population graph solution equals the closed form"};
  o.limit = 30;
  const std::size_t n = 200, k = 20;
  const double p = 0.5, q = 2.0 / n, alpha = 0.5;
  LocalModelParams params;
  params.n = n;
  params.k = k;
  params.p = p;
  params.q = q;
  params.background = background::ErdosRenyi{q};
  const Graph g = population_graph(params);

  const double nk = static_cast<double>(n - k), kk = static_cast<double>(k);
  const double d_bar = p * (kk - 1) + q * nk;
  const double e_min = q * kk + q * (nk - 1);  // every exterior node has the same degree
  const double rho_nat = p * (1 - alpha) / (d_bar * ((1 + alpha) * d_bar + (1 - alpha) * p));
  const double rho_sharp =
      q * (1 - alpha) / (2 * alpha * d_bar * e_min + q * (1 - alpha) * (kk * d_bar + nk * e_min));
  const double u = 2 * alpha / ((1 + alpha) * d_bar + (1 - alpha) * p);

  double worst = 0;
  for (int i = 1; i <= 5; ++i) {
    const double rho = rho_sharp + (rho_nat - rho_sharp) * i / 6.0;
    const double v = ((1 - alpha) / 2 * p * u - rho * alpha * d_bar) / (alpha * d_bar + (1 - alpha) / 2 * q * nk);
    const SparseVector x = l1(PageRankProblem(g, SeedVector::single(0), alpha, rho)).x;
    for (NodeId j = 0; j < n; ++j) {
      const double expect = (j == 0 ? u : 0.0) + (j < k ? v : 0.0);
      worst = std::max(worst, std::abs(x[j] - expect));
    }
  }
  o.passed = worst <= 1e-6;
  o.detail = "max l_inf error " + fmt(worst) + " over 5 rho in (" + fmt(rho_sharp) + ", " +
             fmt(rho_nat) + ") (tol 1e-6)";
  return o;
}

// Shared recovery regime for criteria 7-9.
struct RecoveryRun {
  std::size_t trials = 0, full = 0, fp_ok = 0, qualifying = 0, exact = 0, mismatches = 0;
};

RecoveryRun recovery(SolverKind solver, bool record_locality) {
  const std::size_t n = 2000, k = 20;
  const double p = 0.5, q = 1.0 / n, alpha = 0.5, delta = 0.1;
  const LocalModelParams params = LocalModelParams::sbm(n / k, k, p, q);
  const Theory th = theory_of(n, k, p, q, alpha, delta);

  RecoveryOptions opt;
  opt.alpha = alpha;
  opt.delta = delta;
  opt.trials = 30;
  opt.seed = 77;
  opt.solver = solver;
  const RecoverySummary summary = recovery_experiment(params, opt);

  const double c = q * static_cast<double>(n);
  const double degree_needed = (0.5 * c + 1) / (th.gamma * p);

  RecoveryRun run;
  for (const TrialRecord& t : summary.trials) {
    const Instance inst = generate(params, t.instance_seed);
    const PageRankProblem prob(inst.graph, SeedVector::single(t.seed_node), alpha, th.rho);
    const SolveResult r = solver == SolverKind::L1 ? l1(prob) : appr_solve(prob);
    if (record_locality) locality_tally.record(inst.graph, r.x, NodeSet{t.seed_node}, r.stats.touched);

    const NodeSet supp = support(r.x);
    const bool full = inst.target.is_subset_of(supp);
    const double fp = vol_of(inst.graph, supp.set_difference(inst.target));
    const double bound = fp_bound(th, vol_of(inst.graph, inst.target), solver == SolverKind::Appr);

    // Qualifying: the seed has no edge leaving K and every exterior neighbor
    // of K meets the degree condition.
    bool good_seed = inst.target.contains(t.seed_node);
    for (NodeId u : inst.graph.neighbors(t.seed_node)) {
      if (!inst.target.contains(u)) good_seed = false;
    }
    bool degree_ok = true;
    for (NodeId u : neighborhood(inst.graph, inst.target)) {
      if (inst.graph.degree(u) < degree_needed) degree_ok = false;
    }

    ++run.trials;
    if (full) {
      ++run.full;
      if (fp <= bound) ++run.fp_ok;
    }
    if (good_seed && degree_ok) {
      ++run.qualifying;
      if (supp == inst.target) ++run.exact;
    }
    if (full != t.full_recovery || r.x.nnz() != t.support_size) ++run.mismatches;
  }
  return run;
}

std::string recovery_detail(const RecoveryRun& r) {
  return std::to_string(r.full) + "/" + std::to_string(r.trials) + " full recoveries, " +
         std::to_string(r.fp_ok) + "/" + std::to_string(r.full) + " within FP bound, " +
         std::to_string(r.mismatches) + " harness mismatches";
}

Outcome full_recovery(const RecoveryRun& r, double seconds) {
  Outcome o{7, "full recovery with false positives within bound"};
  o.limit = 120;
  o.seconds = seconds;
  o.passed = r.full * 10 >= r.trials * 9 && r.fp_ok == r.full && r.mismatches == 0;
  o.detail = recovery_detail(r) + " (need >= 90%)";
  return o;
}

Outcome exact_recovery(const RecoveryRun& r, double seconds) {
  Outcome o{8, "exact recovery from a good seed"};
  o.limit = 120;
  o.seconds = seconds;
  o.passed = r.qualifying > 0 && r.exact * 10 >= r.qualifying * 8;
  o.detail = std::to_string(r.exact) + "/" + std::to_string(r.qualifying) +
             " qualifying trials exact (need >= 80%; " + std::to_string(r.trials) + " draws)";
  return o;
}

Outcome appr_recovery() {
  Outcome o{9, "push algorithm recovery with adjusted FP bound"};
  o.limit = 120;
  const RecoveryRun r = recovery(SolverKind::Appr, false);
  o.passed = r.full * 10 >= r.trials * 9 && r.fp_ok == r.full && r.mismatches == 0;
  o.detail = recovery_detail(r) + " (need >= 90%)";
  return o;
}

Outcome stagewise_convergence() {
  Outcome o{10, "stagewise path approaches the l1 path as the step shrinks"};
  o.limit = 180;
  const double alpha = 0.1;
  const LocalModelParams params = LocalModelParams::sbm(50, 20, 0.5, 0.002);
  const Instance inst = generate(params, 1010);
  const NodeId seed = seed_for(inst);
  const PageRankProblem prob(inst.graph, SeedVector::single(seed), alpha, 0.0);
  const double rho_end = theory_of(params.n, params.k, params.p, params.q, alpha, 0.1).rho;
  const double rho_start = 0.5 / inst.graph.degree(seed);

  std::vector<double> checkpoints;
  for (int i = 0; i < 6; ++i) checkpoints.push_back(rho_start * std::pow(rho_end / rho_start, i / 5.0));

  auto distance = [&](double eta) {
    StagewiseOptions opt;
    opt.eta = eta;
    opt.stride = 10;
    opt.stop.min_rho = 0.9 * rho_end;
    const SolutionPath path = stagewise_path(prob, opt);
    double worst = 0;
    for (double r : checkpoints) {
      const PathPoint& pt = path_point_near(path, r);
      const SparseVector exact = l1(prob.with_rho(pt.implied_rho)).x;
      worst = std::max(worst, linf_distance(pt.iterate, exact));
    }
    return worst;
  };

  std::vector<double> d;
  std::string detail = "sup distance";
  for (double eta : {1e-3, 5e-4, 1e-4, 1e-5}) {
    d.push_back(distance(eta));
    detail += " eta=" + fmt(eta) + ":" + fmt(d.back());
  }
  const bool monotone = d[1] <= d[0] && d[2] <= d[1];
  const bool near_reference = d[2] <= 5.0 * d[3];
  o.passed = monotone && near_reference;
  o.detail = detail + "; nonincreasing " + (monotone ? "yes" : "no") + ", d(1e-4)/d(1e-5) = " +
             fmt(d[2] / d[3]) + " (need <= 5)";
  return o;
}

Outcome locality() {
  Outcome o{11, "solvers touch only the support, the seeds and their neighbors"};
  const std::size_t n = 100000, k = 20;
  const double alpha = 0.5;
  const LocalModelParams params = LocalModelParams::sbm(n / k, k, 0.5, 1.0 / n);
  const Instance inst = generate(params, 1111);
  const NodeId seed = seed_for(inst);
  const double rho = theory_of(n, k, 0.5, 1.0 / n, alpha, 0.1).rho;
  const PageRankProblem prob(inst.graph, SeedVector::single(seed), alpha, rho);
  const SolveResult r = l1(prob);
  locality_tally.record(inst.graph, r.x, NodeSet{seed}, r.stats.touched);
  const double share = static_cast<double>(r.stats.touched.size()) / static_cast<double>(n);
  o.passed = locality_tally.failures == 0 && share < 0.05;
  o.detail = std::to_string(locality_tally.failures) + "/" + std::to_string(locality_tally.solves) +
             " solves touched outside the neighborhood; large instance touched " +
             std::to_string(r.stats.touched.size()) + " of " + std::to_string(n) + " nodes (" +
             fmt(100 * share) + "%, need < 5%)";
  return o;
}

Outcome f1_trend() {
  Outcome o{12, "best-on-path F1 nondecreasing in gamma"};
  o.limit = 300;
  GammaSweepOptions opt;
  opt.seed = 12;
  const std::vector<GammaRow> rows = gamma_sweep(opt);
  bool trend = true, ordered = true;
  std::string detail = "mean best F1";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail += " " + fmt(rows[i].gamma) + ":" + fmt(rows[i].mean_best_f1);
    if (i > 0 && rows[i].mean_best_f1 < rows[i - 1].mean_best_f1) trend = false;
    for (const PathTrial& t : rows[i].paths) {
      if (t.min_conductance_f1 > t.best_f1) ordered = false;
    }
  }
  o.passed = trend && ordered && rows.size() == 4;
  o.detail = detail + "; min-conductance F1 <= best F1 in every trial: " + (ordered ? "yes" : "no");
  return o;
}

template <class F>
Outcome timed(F&& f) {
  const auto t0 = Clock::now();
  Outcome o = f();
  o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return o;
}

}  // namespace

// --expect-fail=7,10 names criteria known to fail; the exit status is then 0
// only if exactly those fail. Their FAIL lines are still printed.
int main(int argc, char** argv) {
  std::vector<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--expect-fail=", 0) != 0) {
      std::fprintf(stderr, "usage: %s [--expect-fail=ID,ID,...]\n", argv[0]);
      return 2;
    }
    std::stringstream ids(arg.substr(14));
    for (std::string id; std::getline(ids, id, ',');) expected_failures.push_back(std::stoi(id));
  }
  std::sort(expected_failures.begin(), expected_failures.end());

  std::vector<Outcome> out;
  out.push_back(timed(oracle_equivalence));
  out.push_back(timed(kkt_suite));
  out.push_back(timed(monotone_path));
  out.push_back(timed(sandwich));
  out.push_back(timed(population_closed_form));

  {
    const auto t0 = Clock::now();
    const RecoveryRun r = recovery(SolverKind::L1, true);
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(full_recovery(r, s));
    out.push_back(exact_recovery(r, s));
  }
  out.push_back(timed(appr_recovery));
  out.push_back(timed(stagewise_convergence));
  out.push_back(timed(locality));
  out.push_back(timed(f1_trend));

  Outcome vol{5, "support volume within (1 - d'x)/rho on every l1 solve"};
  vol.passed = volume_tally.failures == 0;
  vol.detail = std::to_string(volume_tally.failures) + " violations over " +
               std::to_string(volume_tally.solves) + " solves, max vol/bound " +
               fmt(volume_tally.worst_ratio);
  out.push_back(vol);

  std::sort(out.begin(), out.end(), [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
  std::vector<int> failed;
  for (Outcome& o : out) {
    if (o.limit > 0 && o.seconds > o.limit) {
      o.passed = false;
      o.detail += "; over runtime limit";
    }
    if (!o.passed) failed.push_back(o.id);
    std::printf("%s %2d %s: %s [%.2fs", o.passed ? "PASS" : "FAIL", o.id, o.name.c_str(),
                o.detail.c_str(), o.seconds);
    if (o.limit > 0) std::printf(", limit %.0fs", o.limit);
    std::printf("]\n");
  }
  if (!expected_failures.empty()) {
    std::printf("expected failures:");
    for (int id : expected_failures) std::printf(" %d", id);
    std::printf(" -> %s\n", failed == expected_failures ? "as expected" : "MISMATCH");
    return failed == expected_failures ? 0 : 1;
  }
  return failed.empty() ? 0 : 1;
}
