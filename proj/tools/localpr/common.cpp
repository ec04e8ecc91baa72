#include "common.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <iostream>

#include "localpr/errors.hpp"
#include "localpr/io.hpp"
#include "localpr/serialize.hpp"

namespace cli {

std::string env_name(const std::string& flag) {
  std::string out = "LOCALPR_";
  for (char c : flag) out += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return out;
}

CLI::Option* Command::flag(const std::string& name, bool& var, const std::string& desc) {
  CLI::Option* opt = app->add_flag("--" + name, var, desc)->envname(env_name(name));
  fields.emplace_back(name, [&var] { return ordered_json(var); });
  return opt;
}

void Command::add_common(const std::vector<std::string>& formats) {
  if (!formats.empty()) {
    format = formats.front();
    option("format", format, "Output format")->check(CLI::IsMember(formats));
  }
  option("out", out, "Output path ('-' for stdout)");
  option("rng-seed", rng_seed, "Seed recorded in the output and used for any random draws");
  flag("no-timestamp", no_timestamp, "Omit the timestamp and timing fields (byte-identical reruns)");
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ordered_json Command::metadata() const {
  ordered_json config;
  for (const auto& [name, get] : fields) config[name] = get();
  ordered_json m;
  m["tool"] = "localpr";
  m["version"] = LOCALPR_VERSION_STRING;
  m["command"] = app->get_name();
  m["config"] = std::move(config);
  m["rng_seed"] = rng_seed;
  if (!no_timestamp) m["timestamp"] = utc_now();
  return m;
}

void Command::write_metadata_comments(std::ostream& os) const {
  const ordered_json m = metadata();
  os << "# tool: localpr " << LOCALPR_VERSION_STRING << '\n';
  os << "# command: " << app->get_name() << '\n';
  os << "# config: " << m["config"].dump() << '\n';
  os << "# rng_seed: " << rng_seed << '\n';
  if (m.contains("timestamp")) os << "# timestamp: " << m["timestamp"].get<std::string>() << '\n';
}

Output::Output(const std::string& path) : path_(path), os_(&std::cout) {
  if (path != "-") {
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
    os_ = file_.get();
  }
}

void Output::finish() {
  os_->flush();
  if (!*os_) throw std::runtime_error("write to '" + path_ + "' failed");
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

}  // namespace

localpr::Graph load_graph(const std::string& path) {
  std::ifstream in = open_input(path);
  localpr::LoadedGraph lg = localpr::load_edge_list(in);
  if (!lg.connected) {
    std::cerr << "warning: graph '" << path << "' is not connected\n";
  }
  return std::move(lg.graph);
}

localpr::NodeSet load_nodes(const std::string& path) {
  std::ifstream in = open_input(path);
  return localpr::load_node_set(in);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in = open_input(path);
  try {
    return nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void ModelFlags::add(Command& cmd) {
  cmd.option("model", model, "Model file (key = value lines); overrides the model flags");
  cmd.option("n", n, "Total number of nodes");
  cmd.option("k", k, "Target cluster size");
  cmd.option("p", p, "Edge probability inside the target");
  cmd.option("q", q, "Edge probability between the target and the rest");
  cmd.option("blocks", blocks, "SBM shortcut: this many blocks of size k, p inside, q across");
  cmd.option("background", background, "Exterior model")
      ->check(CLI::IsMember({"none", "er", "sbm"}));
  cmd.option("q-bg", q_bg, "Erdos-Renyi exterior probability (default q)");
  cmd.option("p-in", p_in, "SBM within-block probability (default p)");
  cmd.option("p-out", p_out, "SBM across-block probability (default q)");
  cmd.option("cluster-size", cluster_size, "SBM exterior block size (default k)");
}

localpr::LocalModelParams ModelFlags::resolve() const {
  using namespace localpr;
  if (!model.empty()) {
    std::ifstream in(model);
    if (!in) throw UsageError("cannot open model file '" + model + "'");
    return model_params_from_config(in);
  }
  if (!q) throw UsageError("--q is required (or give --model)");
  if (blocks) {
    LocalModelParams m = LocalModelParams::sbm(*blocks, k, p, *q);
    if (n && *n != m.n) throw UsageError("--n disagrees with --blocks * --k");
    return m;
  }
  if (!n) throw UsageError("--n is required (or give --blocks or --model)");
  LocalModelParams m;
  m.n = *n;
  m.k = k;
  m.p = p;
  m.q = *q;
  if (m.k == 0 || m.k > m.n) throw UsageError("k must satisfy 0 < k <= n");
  if (background == "er") {
    m.background = background::ErdosRenyi{q_bg.value_or(*q)};
  } else if (background == "sbm") {
    const std::size_t size = cluster_size.value_or(k);
    const std::size_t rest = m.n - m.k;
    if (size == 0 || rest % size != 0) {
      throw UsageError("--cluster-size must divide n - k");
    }
    m.background = background::Sbm{std::vector<std::size_t>(rest / size, size),
                                    p_in.value_or(p), p_out.value_or(*q)};
  }
  m.validate();
  return m;
}

}  // namespace cli
