#include "localpr/serialize.hpp"

#include <charconv>
#include <sstream>

#include "localpr/errors.hpp"
#include "localpr/io.hpp"

namespace localpr {

using nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, std::size_t line) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParseError(line, "expected a number, got '" + v + "'");
  }
  return out;
}

std::size_t parse_size(const std::string& v, std::size_t line) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParseError(line, "expected a nonnegative integer, got '" + v + "'");
  }
  return out;
}

ordered_json interval_json(const Interval& i) { return ordered_json::array({i.lo, i.hi}); }

}  // namespace

ordered_json to_json(const SparseVector& x) {
  ordered_json j = ordered_json::object();
  for (const auto& e : x) j[std::to_string(e.node)] = e.value;
  return j;
}

SparseVector sparse_vector_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("sparse vector must be a JSON object");
  std::vector<SparseVector::Entry> entries;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    NodeId node = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), node);
    if (ec != std::errc() || ptr != key.data() + key.size()) {
      throw InvalidArgument("sparse vector key '" + key + "' is not a node id");
    }
    if (!it.value().is_number()) throw InvalidArgument("sparse vector value must be a number");
    entries.push_back({node, it.value().get<double>()});
  }
  return SparseVector(std::move(entries));
}

ordered_json to_json(const SolveStats& s, bool include_timing) {
  ordered_json j;
  j["iterations"] = s.iterations;
  j["touched"] = s.touched.size();
  j["max_kkt_violation"] = s.max_kkt_violation;
  if (include_timing) j["wall_seconds"] = s.wall_seconds;
  return j;
}

ordered_json to_json(const KktReport& r) {
  ordered_json j;
  j["passed"] = r.passed;
  j["max_violation"] = r.max_violation;
  j["max_support_violation"] = r.max_support_violation;
  j["max_zero_violation"] = r.max_zero_violation;
  j["worst_node"] = r.worst_node ? ordered_json(*r.worst_node) : ordered_json(nullptr);
  j["checked_nodes"] = r.checked_nodes;
  j["negative_entry"] = r.negative_entry;
  return j;
}

ordered_json to_json(const ModelTheory& t) {
  ordered_json j;
  j["alpha"] = t.alpha;
  j["delta"] = t.delta;
  j["d_bar"] = t.d_bar;
  j["gamma"] = t.gamma;
  j["expected_conductance"] = t.expected_conductance;
  j["min_exterior_degree"] = t.min_exterior_degree;
  j["rho_delta"] = t.rho_delta;
  j["rho_sharp"] = t.rho_sharp;
  j["rho_natural"] = t.rho_natural;
  j["u"] = t.u;
  j["v"] = t.v;
  return j;
}

ordered_json to_json(const LocalModelParams& p) {
  ordered_json j;
  j["n"] = p.n;
  j["k"] = p.k;
  j["p"] = p.p;
  j["q"] = p.q;
  if (std::holds_alternative<background::None>(p.background)) {
    j["background"] = "none";
  } else if (const auto* er = std::get_if<background::ErdosRenyi>(&p.background)) {
    j["background"] = "er";
    j["q_bg"] = er->q_bg;
  } else {
    const auto& sbm = std::get<background::Sbm>(p.background);
    j["background"] = "sbm";
    j["p_in"] = sbm.p_in;
    j["p_out"] = sbm.p_out;
    j["cluster_sizes"] = sbm.cluster_sizes;
  }
  return j;
}

ordered_json to_json(const ClusterEval& e) {
  ordered_json j;
  j["precision"] = e.precision;
  j["recall"] = e.recall;
  j["f1"] = e.f1;
  j["tp_volume"] = e.tp_volume;
  j["fp_volume"] = e.fp_volume;
  j["recovered_volume"] = e.recovered_volume;
  j["target_volume"] = e.target_volume;
  j["conductance"] = e.conductance ? ordered_json(*e.conductance) : ordered_json(nullptr);
  j["empty_recovered"] = e.empty_recovered;
  return j;
}

ordered_json to_json(const RecoverySummary& s) {
  ordered_json j;
  j["params"] = to_json(s.params);
  j["solver"] = s.options.solver == SolverKind::L1 ? "l1pr" : "appr";
  j["alpha"] = s.options.alpha;
  j["delta"] = s.options.delta;
  j["degree_multiplier"] = s.options.degree_multiplier;
  j["theory"] = to_json(s.theory);
  j["rho"] = s.rho;
  j["trials"] = s.trials.size();
  j["full_recoveries"] = s.full_recoveries;
  j["full_recovery_ci"] = interval_json(s.full_recovery_ci);
  j["exact_recoveries"] = s.exact_recoveries;
  j["qualifying"] = s.qualifying;
  j["exact_qualifying"] = s.exact_qualifying;
  j["exact_recovery_ci"] = interval_json(s.exact_recovery_ci);
  j["fp_within_bound"] = s.fp_within_bound;
  j["mean_fp_volume"] = s.mean_fp_volume;
  j["mean_fp_bound"] = s.mean_fp_bound;
  j["mean_f1"] = s.mean_f1;
  j["mean_sweep_f1"] = s.mean_sweep_f1;
  return j;
}

LocalModelParams model_params_from_config(std::istream& in) {
  LocalModelParams p;
  std::string kind = "none";
  double q_bg = 0.0, p_in = -1.0, p_out = -1.0;
  std::optional<std::size_t> cluster_size;
  std::vector<std::size_t> cluster_sizes;
  bool have_n = false, have_k = false, have_p = false, have_q = false;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(raw.substr(0, eq));
    const std::string val = trim(raw.substr(eq + 1));
    if (key == "n") {
      p.n = parse_size(val, line);
      have_n = true;
    } else if (key == "k") {
      p.k = parse_size(val, line);
      have_k = true;
    } else if (key == "p") {
      p.p = parse_double(val, line);
      have_p = true;
    } else if (key == "q") {
      p.q = parse_double(val, line);
      have_q = true;
    } else if (key == "background") {
      kind = val;
    } else if (key == "q_bg") {
      q_bg = parse_double(val, line);
    } else if (key == "p_in") {
      p_in = parse_double(val, line);
    } else if (key == "p_out") {
      p_out = parse_double(val, line);
    } else if (key == "cluster_size") {
      cluster_size = parse_size(val, line);
    } else if (key == "cluster_sizes") {
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) cluster_sizes.push_back(parse_size(trim(item), line));
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  if (!have_n || !have_k || !have_p || !have_q) {
    throw InvalidArgument("model config needs n, k, p and q");
  }
  if (kind == "none") {
    p.background = background::None{};
  } else if (kind == "er") {
    p.background = background::ErdosRenyi{q_bg};
  } else if (kind == "sbm") {
    background::Sbm sbm;
    sbm.p_in = p_in < 0.0 ? p.p : p_in;
    sbm.p_out = p_out < 0.0 ? p.q : p_out;
    if (cluster_size) {
      if (*cluster_size == 0 || p.n < p.k || (p.n - p.k) % *cluster_size != 0) {
        throw InvalidArgument("cluster_size must divide n - k");
      }
      sbm.cluster_sizes.assign((p.n - p.k) / *cluster_size, *cluster_size);
    } else {
      sbm.cluster_sizes = cluster_sizes;
    }
    p.background = std::move(sbm);
  } else {
    throw InvalidArgument("background must be none, er or sbm");
  }
  p.validate();
  return p;
}

void write_model_config(std::ostream& out, const LocalModelParams& p) {
  out << "n = " << p.n << "\nk = " << p.k << "\np = " << format_double(p.p)
      << "\nq = " << format_double(p.q) << '\n';
  if (std::holds_alternative<background::None>(p.background)) {
    out << "background = none\n";
  } else if (const auto* er = std::get_if<background::ErdosRenyi>(&p.background)) {
    out << "background = er\nq_bg = " << format_double(er->q_bg) << '\n';
  } else {
    const auto& sbm = std::get<background::Sbm>(p.background);
    out << "background = sbm\np_in = " << format_double(sbm.p_in)
        << "\np_out = " << format_double(sbm.p_out) << "\ncluster_sizes = ";
    for (std::size_t i = 0; i < sbm.cluster_sizes.size(); ++i) {
      out << (i ? "," : "") << sbm.cluster_sizes[i];
    }
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& s, const SparseVector& x) {
  out << "rank,node,value,prefix_conductance\n";
  for (std::size_t r = 0; r < s.order.size(); ++r) {
    out << r + 1 << ',' << s.order[r] << ',' << format_double(x[s.order[r]]) << ','
        << format_double(s.prefix_conductance[r]) << '\n';
  }
}

void write_trials_csv(std::ostream& out, const RecoverySummary& s) {
  out << "trial,instance_seed,seed_node,good_seed,full_recovery,exact_recovery,target_volume,"
         "fp_volume,fp_bound,fp_within_bound,degree_condition,min_exterior_neighbor_degree,"
         "support_size,touched,locality,volume_bound,f1,sweep_f1\n";
  for (const TrialRecord& t : s.trials) {
    out << t.trial << ',' << t.instance_seed << ',' << t.seed_node << ',' << t.good_seed << ','
        << t.full_recovery << ',' << t.exact_recovery << ',' << format_double(t.target_volume)
        << ',' << format_double(t.fp_volume) << ',' << format_double(t.fp_bound) << ','
        << t.fp_within_bound << ',' << t.degree_condition << ','
        << format_double(t.min_exterior_neighbor_degree) << ',' << t.support_size << ','
        << t.touched << ',' << t.locality << ',' << t.volume_bound << ',' << format_double(t.f1)
        << ',' << format_double(t.sweep_f1) << '\n';
  }
}

void write_gamma_csv(std::ostream& out, const std::vector<GammaRow>& rows) {
  out << "gamma,q,trials,mean_best_f1,mean_min_conductance_f1,full_recovery_rate,"
         "exact_recovery_rate,mean_fp_volume,mean_fp_bound,rho\n";
  for (const GammaRow& r : rows) {
    const double trials = static_cast<double>(r.recovery.trials.size());
    out << format_double(r.gamma) << ',' << format_double(r.q) << ',' << r.paths.size() << ','
        << format_double(r.mean_best_f1) << ',' << format_double(r.mean_min_conductance_f1) << ','
        << format_double(static_cast<double>(r.recovery.full_recoveries) / trials) << ','
        << format_double(static_cast<double>(r.recovery.exact_recoveries) / trials) << ','
        << format_double(r.recovery.mean_fp_volume) << ','
        << format_double(r.recovery.mean_fp_bound) << ',' << format_double(r.recovery.rho)
        << '\n';
  }
}

}  // namespace localpr
