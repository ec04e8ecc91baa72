#include "localpr/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "localpr/errors.hpp"
#include "localpr/rng.hpp"

namespace localpr {

namespace {

bool is_probability(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

void require_probability(double x, const char* name) {
  if (!is_probability(x)) {
    throw InvalidArgument(std::string(name) + " must be a probability in [0, 1]");
  }
}

// Visits a Bernoulli(p) subset of {0, .., count-1} in increasing order.
template <class Visit>
void sample_indices(Rng& rng, std::uint64_t count, double p, Visit&& visit) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) visit(i);
    return;
  }
  const double log1m_p = std::log1p(-p);
  std::uint64_t i = 0;
  for (;;) {
    const std::uint64_t skip = rng.geometric_skip(log1m_p);
    if (skip >= count - i) return;
    i += skip;
    visit(i);
    if (++i >= count) return;
  }
}

// Pairs a < b inside [lo, lo + size).
void sample_triangle(Rng& rng, NodeId lo, std::size_t size, double p, std::vector<Edge>& out) {
  if (size < 2) return;
  const std::uint64_t count = static_cast<std::uint64_t>(size) * (size - 1) / 2;
  // Row r holds pairs (r, r+1..size-1); walk rows as the index increases.
  std::uint64_t row = 0, row_start = 0, row_len = size - 1;
  sample_indices(rng, count, p, [&](std::uint64_t idx) {
    while (idx >= row_start + row_len) {
      row_start += row_len;
      ++row;
      --row_len;
    }
    const std::uint64_t col = row + 1 + (idx - row_start);
    out.push_back({static_cast<NodeId>(lo + row), static_cast<NodeId>(lo + col), 1.0});
  });
}

// Pairs (a, b) with a in [lo_a, lo_a + size_a), b in [lo_b, lo_b + size_b).
void sample_rectangle(Rng& rng, NodeId lo_a, std::size_t size_a, NodeId lo_b, std::size_t size_b,
                      double p, std::vector<Edge>& out) {
  const std::uint64_t count = static_cast<std::uint64_t>(size_a) * size_b;
  sample_indices(rng, count, p, [&](std::uint64_t idx) {
    out.push_back({static_cast<NodeId>(lo_a + idx / size_b), static_cast<NodeId>(lo_b + idx % size_b),
                   1.0});
  });
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Sizes of the consecutive exterior blocks (one block unless SBM).
std::vector<std::size_t> exterior_clusters(const LocalModelParams& params) {
  if (const auto* sbm = std::get_if<background::Sbm>(&params.background)) return sbm->cluster_sizes;
  return {params.n - params.k};
}

}  // namespace

void LocalModelParams::validate() const {
  if (n == 0) throw InvalidArgument("n must be positive");
  if (k == 0 || k > n) throw InvalidArgument("k must satisfy 0 < k <= n");
  if (n > std::size_t{1} << 32) throw InvalidArgument("n exceeds the node id range");
  if (!(p > 0.0) || !is_probability(p)) throw InvalidArgument("p must lie in (0, 1]");
  require_probability(q, "q");
  std::visit(overloaded{
                 [](const background::None&) {},
                 [](const background::ErdosRenyi& er) { require_probability(er.q_bg, "q_bg"); },
                 [&](const background::Sbm& sbm) {
                   require_probability(sbm.p_in, "p_in");
                   require_probability(sbm.p_out, "p_out");
                   std::size_t total = 0;
                   for (std::size_t s : sbm.cluster_sizes) {
                     if (s == 0) throw InvalidArgument("SBM cluster sizes must be positive");
                     total += s;
                   }
                   if (total != n - k) {
                     throw InvalidArgument("SBM cluster sizes must sum to n - k");
                   }
                 },
             },
             background);
}

LocalModelParams LocalModelParams::sbm(std::size_t blocks, std::size_t k, double p, double q) {
  if (blocks == 0) throw InvalidArgument("SBM needs at least one block");
  LocalModelParams params;
  params.n = blocks * k;
  params.k = k;
  params.p = p;
  params.q = q;
  params.background = background::Sbm{std::vector<std::size_t>(blocks - 1, k), p, q};
  params.validate();
  return params;
}

Instance generate(const LocalModelParams& params, std::uint64_t seed, bool permute) {
  params.validate();
  Rng rng(seed);
  std::vector<Edge> edges;
  const auto k = static_cast<NodeId>(params.k);
  const std::size_t ext = params.n - params.k;

  sample_triangle(rng, 0, params.k, params.p, edges);
  sample_rectangle(rng, 0, params.k, k, ext, params.q, edges);
  std::visit(overloaded{
                 [](const background::None&) {},
                 [&](const background::ErdosRenyi& er) {
                   sample_triangle(rng, k, ext, er.q_bg, edges);
                 },
                 [&](const background::Sbm& sbm) {
                   const auto& sizes = sbm.cluster_sizes;
                   std::vector<NodeId> lo(sizes.size());
                   NodeId at = k;
                   for (std::size_t b = 0; b < sizes.size(); ++b) {
                     lo[b] = at;
                     at += static_cast<NodeId>(sizes[b]);
                   }
                   for (std::size_t a = 0; a < sizes.size(); ++a) {
                     sample_triangle(rng, lo[a], sizes[a], sbm.p_in, edges);
                     for (std::size_t b = a + 1; b < sizes.size(); ++b) {
                       sample_rectangle(rng, lo[a], sizes[a], lo[b], sizes[b], sbm.p_out, edges);
                     }
                   }
                 },
             },
             params.background);

  std::vector<NodeId> target(params.k);
  std::iota(target.begin(), target.end(), NodeId{0});
  if (permute) {
    std::vector<NodeId> perm(params.n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    for (std::size_t i = params.n; i > 1; --i) {
      std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    }
    for (Edge& e : edges) {
      e.u = perm[e.u];
      e.v = perm[e.v];
    }
    for (NodeId& t : target) t = perm[t];
  }
  return {Graph::from_edges(static_cast<NodeId>(params.n), edges), NodeSet(std::move(target))};
}

Graph population_graph(const LocalModelParams& params, std::size_t max_nodes) {
  params.validate();
  if (params.n > max_nodes) {
    throw InvalidArgument("population graph with " + std::to_string(params.n) +
                          " nodes exceeds the dense cap of " + std::to_string(max_nodes));
  }
  const auto n = static_cast<NodeId>(params.n);
  const auto k = static_cast<NodeId>(params.k);
  // Cluster index per exterior node, for the SBM background.
  std::vector<std::size_t> cluster(params.n, 0);
  {
    NodeId at = k;
    const auto sizes = exterior_clusters(params);
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      for (std::size_t t = 0; t < sizes[b]; ++t) cluster[at++] = b;
    }
  }
  auto exterior_weight = [&](NodeId a, NodeId b) {
    return std::visit(overloaded{
                          [](const background::None&) { return 0.0; },
                          [](const background::ErdosRenyi& er) { return er.q_bg; },
                          [&](const background::Sbm& sbm) {
                            return cluster[a] == cluster[b] ? sbm.p_in : sbm.p_out;
                          },
                      },
                      params.background);
  };
  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      double w = 0.0;
      if (b < k) {
        w = params.p;
      } else if (a < k) {
        w = params.q;
      } else {
        w = exterior_weight(a, b);
      }
      if (w > 0.0) edges.push_back({a, b, w});
    }
  }
  return Graph::from_edges(n, edges);
}

double ModelTheory::rho_at(double d) const {
  const double a = (1.0 - alpha) / (1.0 + alpha);
  const double b = (1.0 - d) / (1.0 + d);
  return a * a * b * b * gamma * p / ((1.0 + d) * d_bar * d_bar);
}

double ModelTheory::v_at(double rho) const {
  const double leak = 0.5 * (1.0 - alpha);
  return (leak * p * u - rho * alpha * d_bar) /
         (alpha * d_bar + leak * q * static_cast<double>(n - k));
}

double ModelTheory::fp_volume_bound(double target_volume) const {
  const double a = (1.0 + alpha) / (1.0 - alpha);
  const double b = (1.0 + delta) / (1.0 - delta);
  return target_volume * (a * a * b * b * b / (gamma * gamma) - 1.0);
}

double ModelTheory::appr_fp_volume_bound(double target_volume) const {
  const double a = (1.0 + alpha) / (1.0 - alpha);
  const double b = (1.0 + delta) / (1.0 - delta);
  return target_volume * (2.0 / (1.0 - alpha) * a * a * b * b * b / (gamma * gamma) - 1.0);
}

double ModelTheory::degree_condition(double multiplier) const {
  const double c = q * static_cast<double>(n);
  return multiplier * (0.5 * c + 1.0) / (gamma * p);
}

ModelTheory theory(const LocalModelParams& params, double alpha, double delta) {
  params.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (params.k < 2) throw InvalidArgument("theory needs a target of at least two nodes");

  ModelTheory t;
  t.alpha = alpha;
  t.delta = delta;
  t.p = params.p;
  t.q = params.q;
  t.n = params.n;
  t.k = params.k;
  const double n = static_cast<double>(params.n);
  const double k = static_cast<double>(params.k);
  t.d_bar = params.p * (k - 1.0) + params.q * (n - k);
  t.gamma = params.p * (k - 1.0) / t.d_bar;
  t.expected_conductance = 1.0 - t.gamma;

  // Smallest expected degree over the complement: k q to the target plus the
  // background's contribution.
  double ext_min = 0.0;
  if (params.n > params.k) {
    const double ext = n - k;
    ext_min = std::visit(
        overloaded{
            [](const background::None&) { return 0.0; },
            [&](const background::ErdosRenyi& er) { return er.q_bg * (ext - 1.0); },
            [&](const background::Sbm& sbm) {
              double best = std::numeric_limits<double>::infinity();
              for (std::size_t s : sbm.cluster_sizes) {
                const double sz = static_cast<double>(s);
                best = std::min(best, sbm.p_in * (sz - 1.0) + sbm.p_out * (ext - sz));
              }
              return best;
            },
        },
        params.background);
    ext_min += params.q * k;
  }
  t.min_exterior_degree = ext_min;

  const double leak = 1.0 - alpha;
  t.rho_natural =
      params.p * leak / (t.d_bar * ((1.0 + alpha) * t.d_bar + leak * params.p));
  const double e = t.min_exterior_degree;
  const double sharp_den =
      2.0 * alpha * t.d_bar * e + params.q * leak * (k * t.d_bar + (n - k) * e);
  t.rho_sharp = sharp_den > 0.0 ? params.q * leak / sharp_den : 0.0;
  t.u = 2.0 * alpha / ((1.0 + alpha) * t.d_bar + leak * params.p);
  t.rho_delta = t.rho_at(delta);
  t.v = t.v_at(t.rho_delta);
  return t;
}

double sbm_q_for_gamma(std::size_t blocks, std::size_t k, double p, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma must lie in (0, 1]");
  if (blocks < 2 || k < 2) throw InvalidArgument("need at least two blocks of two nodes");
  const double n = static_cast<double>(blocks * k);
  const double kk = static_cast<double>(k);
  return p * (kk - 1.0) * (1.0 - gamma) / (gamma * (n - kk));
}

std::optional<NodeId> find_good_seed(const Graph& g, const NodeSet& target) {
  for (NodeId v : target) {
    if (v >= g.num_nodes()) throw InvalidArgument("target node out of range");
    bool inside = true;
    for (NodeId u : g.neighbors(v)) {
      if (!target.contains(u)) {
        inside = false;
        break;
      }
    }
    if (inside) return v;
  }
  return std::nullopt;
}

}  // namespace localpr
