#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "common.hpp"
#include "localpr/analysis.hpp"
#include "localpr/appr.hpp"
#include "localpr/io.hpp"
#include "localpr/l1_solver.hpp"
#include "localpr/rng.hpp"
#include "localpr/serialize.hpp"

namespace cli {

namespace {

struct Invariant {
  std::string name;
  std::size_t failures = 0;
  double worst = 0.0;  // largest violation magnitude seen, 0 when clean

  void record(bool ok, double magnitude) {
    if (!ok) ++failures;
    worst = std::max(worst, magnitude);
  }
};

struct Check : Command {
  std::string graph;
  std::vector<localpr::NodeId> seed_nodes;
  double alpha = 0.2;
  std::optional<double> rho;
  std::vector<double> rho_grid;
  double tol = 1e-8;
  std::size_t trials = 20;
  ModelFlags model;
  std::string inject_fault = "none";

  explicit Check(CLI::App& root)
      : Command(root.add_subcommand(
            "check", "Verify solver invariants on a graph or on a generated corpus")) {
    option("graph", graph, "Edge list file (otherwise a corpus is generated)");
    option("seed-node", seed_nodes, "Seed node id(s) for --graph");
    option("alpha", alpha, "Teleportation parameter");
    option("rho", rho, "Single rho value");
    option("rho-grid", rho_grid,
           "rho values (comma separated); default is a grid of fractions of 1/d_seed")
        ->delimiter(',');
    option("tol", tol, "Relative KKT tolerance");
    option("trials", trials, "Corpus size when no --graph is given")->check(CLI::PositiveNumber);
    model.blocks = 10;
    model.q = 0.01;
    model.add(*this);
    option("inject-fault", inject_fault, "Test hook: corrupt l1 solutions before checking")
        ->check(CLI::IsMember({"none", "kkt"}))
        ->group("");
    add_common({"json", "csv"});
  }

  std::vector<double> grid_for(const localpr::Graph& g, const localpr::NodeSet& seeds) const {
    std::vector<double> out = rho_grid;
    if (rho) out.push_back(*rho);
    if (out.empty()) {
      double d = 0.0;
      for (localpr::NodeId s : seeds) d = std::max(d, g.degree(s));
      for (double f : {0.9, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01}) out.push_back(f / d);
    }
    for (double r : out) {
      if (!(r > 0.0) || !std::isfinite(r)) throw UsageError("check needs rho > 0");
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }

  int run() override {
    struct Case {
      localpr::Graph g;
      localpr::NodeSet seeds;
    };
    std::vector<Case> cases;
    if (!graph.empty()) {
      if (seed_nodes.empty()) throw UsageError("--graph needs --seed-node");
      localpr::Graph g = load_graph(graph);
      for (localpr::NodeId s : seed_nodes) {
        if (s >= g.num_nodes()) throw UsageError("seed node " + std::to_string(s) + " is not in the graph");
      }
      cases.push_back({std::move(g), localpr::NodeSet(seed_nodes)});
    } else {
      const localpr::LocalModelParams params = model.resolve();
      for (std::size_t t = 0; t < trials; ++t) {
        localpr::Instance inst = localpr::generate(params, localpr::derive_seed(rng_seed, t));
        const localpr::NodeId seed = localpr::find_good_seed(inst.graph, inst.target).value_or(0);
        cases.push_back({std::move(inst.graph), localpr::NodeSet{seed}});
      }
    }

    Invariant kkt{"kkt"}, nonneg{"nonnegative"}, vol{"volume_bound"}, local{"locality"},
        mono{"monotone_path"}, term{"appr_termination"}, sandwich{"support_sandwich"};
    ordered_json solves = ordered_json::array();
    std::ostringstream csv;
    csv << "instance,rho,support_size,support_volume,volume_bound,volume_bound_holds,"
           "max_kkt_violation,appr_support_size\n";

    for (std::size_t c = 0; c < cases.size(); ++c) {
      const localpr::Graph& g = cases[c].g;
      const localpr::SeedVector seed = localpr::SeedVector::uniform(cases[c].seeds);
      const std::vector<double> grid = grid_for(g, cases[c].seeds);
      localpr::SparseVector prev;
      for (double r : grid) {
        const localpr::PageRankProblem prob(g, seed, alpha, r);
        localpr::SolveResult res = localpr::solve_l1(prob, {tol});
        if (inject_fault == "kkt") {
          std::vector<localpr::SparseVector::Entry> e(res.x.begin(), res.x.end());
          for (auto& entry : e) entry.value *= 1.05;
          res.x = localpr::SparseVector(std::move(e));
        }
        const localpr::KktReport k = localpr::check_kkt(prob, res.x, tol);
        kkt.record(k.passed, k.max_violation);

        double most_negative = 0.0;
        for (const auto& e : res.x) most_negative = std::min(most_negative, e.value);
        nonneg.record(most_negative >= 0.0, -most_negative);

        const localpr::VolumeBound vb = localpr::volume_bound(prob, res.x);
        vol.record(vb.holds, std::max(0.0, vb.support_volume - vb.bound));

        const bool is_local = localpr::is_local(g, res.x, prob.seed.nodes(), res.stats.touched);
        local.record(is_local, is_local ? 0.0 : 1.0);

        double drop = 0.0;
        for (const auto& e : prev) drop = std::max(drop, e.value - res.x[e.node]);
        mono.record(drop <= 1e-10, drop);
        prev = res.x;

        const localpr::SolveResult appr = localpr::appr_solve(prob);
        const localpr::ApprResidualReport rep = localpr::appr_residual_report(prob, appr.x);
        term.record(rep.terminated(), static_cast<double>(rep.flagged.size()));

        const localpr::SparseVector lower =
            localpr::solve_l1(prob.with_rho(0.5 * (1.0 - alpha) * r), {tol}).x;
        const localpr::NodeSet mid = appr.x.support();
        const std::size_t missing = res.x.support().set_difference(mid).size() +
                                    mid.set_difference(lower.support()).size();
        sandwich.record(missing == 0, static_cast<double>(missing));

        solves.push_back({{"instance", c},
                          {"rho", r},
                          {"support_size", res.x.nnz()},
                          {"support_volume", vb.support_volume},
                          {"volume_bound", vb.bound},
                          {"volume_bound_holds", vb.holds},
                          {"max_kkt_violation", k.max_violation},
                          {"appr_support_size", appr.x.nnz()}});
        csv << c << ',' << localpr::format_double(r) << ',' << res.x.nnz() << ','
            << localpr::format_double(vb.support_volume) << ',' << localpr::format_double(vb.bound)
            << ',' << vb.holds << ',' << localpr::format_double(k.max_violation) << ','
            << appr.x.nnz() << '\n';
      }
    }

    bool all_ok = true;
    ordered_json inv = ordered_json::array();
    for (const Invariant* i : {&kkt, &nonneg, &vol, &local, &mono, &term, &sandwich}) {
      all_ok = all_ok && i->failures == 0;
      inv.push_back({{"name", i->name},
                     {"passed", i->failures == 0},
                     {"failures", i->failures},
                     {"worst", i->worst}});
      std::cerr << (i->failures == 0 ? "PASS " : "FAIL ") << i->name << " failures=" << i->failures
                << " worst=" << localpr::format_double(i->worst) << '\n';
    }

    Output sink(out);
    if (format == "csv") {
      write_metadata_comments(sink.stream());
      sink.stream() << csv.str();
    } else {
      ordered_json j = metadata();
      j["passed"] = all_ok;
      j["instances"] = cases.size();
      j["invariants"] = std::move(inv);
      j["solves"] = std::move(solves);
      sink.stream() << j.dump(2) << '\n';
    }
    sink.finish();
    return all_ok ? kExitOk : kExitInvariant;
  }
};

}  // namespace

std::unique_ptr<Command> make_check(CLI::App& root) { return std::make_unique<Check>(root); }

}  // namespace cli
