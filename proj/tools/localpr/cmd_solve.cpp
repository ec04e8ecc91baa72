#include <cmath>
#include <sstream>

#include "common.hpp"
#include "localpr/appr.hpp"
#include "localpr/io.hpp"
#include "localpr/l1_solver.hpp"
#include "localpr/serialize.hpp"
#include "localpr/stagewise.hpp"

namespace cli {

namespace {

struct Solve : Command {
  std::string graph;
  std::vector<localpr::NodeId> seed_nodes;
  std::string algo = "l1pr";
  double alpha = 0.15;
  std::optional<double> rho;
  std::vector<double> rho_grid;
  double tol = 1e-8;
  std::size_t max_touch = 0;
  std::string order = "fifo";
  std::optional<double> eta;
  std::optional<double> min_rho;
  std::optional<std::size_t> max_iters;
  std::optional<double> max_l1;
  std::size_t stride = 10;

  explicit Solve(CLI::App& root)
      : Command(root.add_subcommand("solve", "Solve l1-regularized PageRank, APPR or the stagewise path")) {
    option("graph", graph, "Edge list file")->required();
    option("seed-node", seed_nodes, "Seed node id(s); mass is split evenly")->required();
    option("algo", algo, "Solver")->check(CLI::IsMember({"l1pr", "appr", "stagewise"}));
    option("alpha", alpha, "Teleportation parameter in (0, 1)");
    option("rho", rho, "Regularization parameter");
    option("rho-grid", rho_grid, "Several rho values (comma separated)")->delimiter(',');
    option("tol", tol, "Relative KKT tolerance for l1pr");
    option("max-touch", max_touch, "Locality budget in touched nodes (0 = off)");
    option("order", order, "APPR queue order")->check(CLI::IsMember({"fifo", "lifo"}));
    option("eta", eta, "Stagewise step (default 1e-4 * alpha)");
    option("min-rho", min_rho, "Stagewise: stop once the implied rho reaches this (default --rho)");
    option("max-iters", max_iters, "Stagewise: step limit");
    option("max-l1", max_l1, "Stagewise: stop once ||x||_1 reaches this");
    option("stride", stride, "Stagewise: keep every stride-th iterate");
    add_common({"json", "csv"});
  }

  localpr::PageRankProblem problem(const localpr::Graph& g, double r) const {
    return localpr::PageRankProblem(g, localpr::SeedVector::uniform(localpr::NodeSet(seed_nodes)),
                                    alpha, r);
  }

  std::vector<double> rhos() const {
    std::vector<double> out = rho_grid;
    if (rho) out.insert(out.begin(), *rho);
    if (out.empty()) throw UsageError("give --rho or --rho-grid");
    for (double r : out) {
      if (!(r >= 0.0) || !std::isfinite(r)) throw UsageError("rho must be finite and >= 0");
    }
    return out;
  }

  int run() override {
    const localpr::Graph g = load_graph(graph);
    for (localpr::NodeId s : seed_nodes) {
      if (s >= g.num_nodes()) throw UsageError("seed node " + std::to_string(s) + " is not in the graph");
    }
    if (algo == "stagewise") return run_stagewise(g);

    ordered_json results = ordered_json::array();
    std::ostringstream csv;
    csv << "rho,node,value\n";
    for (double r : rhos()) {
      const localpr::PageRankProblem prob = problem(g, r);
      ordered_json res;
      res["rho"] = r;
      localpr::SparseVector x;
      if (algo == "l1pr" && r == 0.0) {
        x = localpr::solve_unregularized(prob);
        res["solution"] = localpr::to_json(x);
      } else if (algo == "l1pr") {
        const localpr::SolveResult sr = localpr::solve_l1(prob, {tol, max_touch});
        x = sr.x;
        const localpr::VolumeBound vb = localpr::volume_bound(prob, x);
        res["solution"] = localpr::to_json(x);
        res["stats"] = localpr::to_json(sr.stats, timing());
        res["kkt"] = localpr::to_json(localpr::check_kkt(prob, x, tol));
        res["volume_bound"] = {{"support_volume", vb.support_volume},
                               {"bound", vb.bound},
                               {"holds", vb.holds}};
      } else {
        if (r == 0.0) throw UsageError("appr needs rho > 0");
        localpr::ApprOptions opt;
        opt.order = order == "lifo" ? localpr::PushOrder::Lifo : localpr::PushOrder::Fifo;
        opt.max_touch = max_touch;
        const localpr::SolveResult sr = localpr::appr_solve(prob, opt);
        x = sr.x;
        const localpr::ApprResidualReport rep = localpr::appr_residual_report(prob, x);
        res["solution"] = localpr::to_json(x);
        res["stats"] = localpr::to_json(sr.stats, timing());
        res["stats"]["pushes"] = sr.stats.iterations;
        res["residual"] = {{"max_scaled_residual", rep.max_scaled_residual},
                           {"terminated", rep.terminated()}};
      }
      res["support_size"] = x.nnz();
      results.push_back(std::move(res));
      for (const auto& e : x) {
        csv << localpr::format_double(r) << ',' << e.node << ',' << localpr::format_double(e.value)
            << '\n';
      }
    }

    Output sink(out);
    if (format == "csv") {
      write_metadata_comments(sink.stream());
      sink.stream() << csv.str();
    } else {
      ordered_json j = metadata();
      j["results"] = std::move(results);
      sink.stream() << j.dump(2) << '\n';
    }
    sink.finish();
    return kExitOk;
  }

  int run_stagewise(const localpr::Graph& g) {
    localpr::StagewiseOptions opt;
    opt.eta = eta.value_or(localpr::default_eta(alpha));
    opt.stride = stride;
    opt.stop.min_rho = min_rho ? min_rho : rho;
    opt.stop.max_iters = max_iters;
    opt.stop.max_l1 = max_l1;
    if (!opt.stop.any()) throw UsageError("stagewise needs --min-rho, --rho, --max-iters or --max-l1");
    const localpr::SolutionPath path = localpr::stagewise_path(problem(g, 0.0), opt);

    Output sink(out);
    if (format == "csv") {
      write_metadata_comments(sink.stream());
      localpr::write_path_csv(sink.stream(), path);
    } else {
      static const char* reasons[] = {"min_rho", "max_iters", "max_l1", "nonnegative_gradient"};
      ordered_json j = metadata();
      j["eta"] = path.eta;
      j["iterations"] = path.iterations;
      j["touched"] = path.touched.size();
      j["stop_reason"] = reasons[static_cast<int>(path.reason)];
      ordered_json pts = ordered_json::array();
      for (const localpr::PathPoint& p : path.points) {
        pts.push_back({{"step", p.step},
                       {"l1_norm", p.l1_norm},
                       {"implied_rho", p.implied_rho},
                       {"solution", localpr::to_json(p.iterate)}});
      }
      j["points"] = std::move(pts);
      sink.stream() << j.dump(2) << '\n';
    }
    sink.finish();
    return kExitOk;
  }
};

}  // namespace

std::unique_ptr<Command> make_solve(CLI::App& root) { return std::make_unique<Solve>(root); }

}  // namespace cli
