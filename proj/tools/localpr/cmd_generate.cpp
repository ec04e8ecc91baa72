#include <fstream>

#include "common.hpp"
#include "localpr/io.hpp"
#include "localpr/serialize.hpp"

namespace cli {

namespace {

ordered_json target_conductance(const localpr::Instance& inst) {
  const double vol = localpr::volume(inst.graph, inst.target);
  if (!(vol > 0.0 && vol < inst.graph.total_volume())) return nullptr;
  return localpr::conductance(inst.graph, inst.target);
}

struct Generate : Command {
  ModelFlags model;
  bool permute = false;
  double alpha = 0.5;
  double delta = 0.1;

  explicit Generate(CLI::App& root)
      : Command(root.add_subcommand("generate", "Draw a graph from the local random model")) {
    model.add(*this);
    flag("permute", permute, "Shuffle node ids after generation");
    option("alpha", alpha, "Teleportation used for the theory block of the params file");
    option("delta", delta, "delta used for the theory block of the params file");
    add_common({});
    out = "";
    app->get_option("--out")->description("Output prefix: writes PREFIX.edges, PREFIX.target, PREFIX.json");
  }

  int run() override {
    if (out.empty() || out == "-") throw UsageError("generate needs --out PREFIX");
    const localpr::LocalModelParams params = model.resolve();
    const localpr::ModelTheory th = localpr::theory(params, alpha, delta);
    const localpr::Instance inst = localpr::generate(params, rng_seed, permute);

    Output edges(out + ".edges");
    write_metadata_comments(edges.stream());
    localpr::save_edge_list(edges.stream(), inst.graph);
    edges.finish();

    Output target(out + ".target");
    write_metadata_comments(target.stream());
    localpr::save_node_set(target.stream(), inst.target);
    target.finish();

    ordered_json j = metadata();
    j["params"] = localpr::to_json(params);
    j["theory"] = localpr::to_json(th);
    j["graph"] = {{"nodes", inst.graph.num_nodes()},
                  {"edges", inst.graph.num_edges()},
                  {"total_volume", inst.graph.total_volume()},
                  {"connected", inst.graph.is_connected()},
                  {"target_volume", localpr::volume(inst.graph, inst.target)},
                  {"target_conductance", target_conductance(inst)}};
    Output meta(out + ".json");
    meta.stream() << j.dump(2) << '\n';
    meta.finish();
    return kExitOk;
  }
};

}  // namespace

std::unique_ptr<Command> make_generate(CLI::App& root) { return std::make_unique<Generate>(root); }

}  // namespace cli
