#include "wgr/gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "wgr/random.hpp"

namespace wgr {

std::string to_string(WeightKind k) {
  switch (k) {
    case WeightKind::pareto: return "pareto";
    case WeightKind::uniform_truncated: return "uniform_truncated";
    case WeightKind::fixed: return "fixed";
  }
  throw std::logic_error("unknown weight kind");
}

WeightKind weight_kind_from_string(const std::string& s) {
  if (s == "pareto") return WeightKind::pareto;
  if (s == "uniform_truncated") return WeightKind::uniform_truncated;
  if (s == "fixed") return WeightKind::fixed;
  throw std::invalid_argument("unknown weight kind: " + s);
}

std::string to_string(Structure s) {
  switch (s) {
    case Structure::connected: return "connected";
    case Structure::multi_component: return "multi_component";
  }
  throw std::logic_error("unknown structure");
}

Structure structure_from_string(const std::string& s) {
  if (s == "connected") return Structure::connected;
  if (s == "multi_component") return Structure::multi_component;
  throw std::invalid_argument("unknown structure: " + s);
}

std::string to_json(const InstanceSpec& spec) {
  nlohmann::ordered_json j;
  j["n"] = spec.n;
  j["d_max"] = spec.d_max;
  j["structure"] = to_string(spec.structure);
  j["k"] = spec.k;
  j["weight_model"] = to_string(spec.weight_model.kind);
  j["alpha"] = spec.weight_model.alpha;
  if (spec.weight_model.w_cap) {
    j["w_cap"] = *spec.weight_model.w_cap;
  } else {
    j["w_cap"] = nullptr;
  }
  j["seed"] = spec.seed;
  return j.dump();
}

InstanceSpec instance_spec_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  InstanceSpec spec;
  spec.n = j.at("n").get<std::size_t>();
  spec.d_max = j.at("d_max").get<std::size_t>();
  spec.structure = structure_from_string(j.at("structure").get<std::string>());
  spec.k = j.at("k").get<std::size_t>();
  spec.weight_model.kind =
      weight_kind_from_string(j.at("weight_model").get<std::string>());
  spec.weight_model.alpha = j.at("alpha").get<double>();
  if (j.contains("w_cap") && !j.at("w_cap").is_null())
    spec.weight_model.w_cap = j.at("w_cap").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

double pareto_quantile(double p, double alpha) {
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("invalid-threshold: quantile p outside [0,1)");
  if (!(alpha > 0.0))
    throw std::invalid_argument("invalid-threshold: alpha must be positive");
  return std::pow(1.0 - p, -1.0 / alpha);
}

double pareto_sample(double alpha, std::mt19937_64& rng) {
  return pareto_quantile(uniform01(rng), alpha);
}

double truncated_pareto_sample(double alpha, double w_cap,
                               std::mt19937_64& rng) {
  if (!(w_cap >= 1.0))
    throw std::invalid_argument("invalid-threshold: w_cap must be >= 1");
  // Inverse CDF of the law conditioned on w <= w_cap: scale u by F(w_cap).
  double mass = 1.0 - std::pow(w_cap, -alpha);
  double u = uniform01(rng) * mass;
  return std::pow(1.0 - u, -1.0 / alpha);
}

double sample_weight(const WeightModel& model, std::mt19937_64& rng) {
  switch (model.kind) {
    case WeightKind::pareto:
      if (model.w_cap)
        return truncated_pareto_sample(model.alpha, *model.w_cap, rng);
      return pareto_sample(model.alpha, rng);
    case WeightKind::uniform_truncated: {
      if (!model.w_cap)
        throw std::invalid_argument(
            "infeasible: uniform_truncated requires w_cap");
      if (!(*model.w_cap >= 1.0))
        throw std::invalid_argument("invalid-threshold: w_cap must be >= 1");
      return 1.0 + uniform01(rng) * (*model.w_cap - 1.0);
    }
    case WeightKind::fixed:
      return 1.0;
  }
  throw std::logic_error("unknown weight kind");
}

namespace {

// Symmetric Dirichlet(1) split of n into k positive integer blocks: each
// block gets 1 plus a share of the remainder proportional to an
// exponential draw; leftovers go to the largest fractional parts.
std::vector<std::size_t> block_sizes(std::size_t n, std::size_t k,
                                     std::mt19937_64& rng) {
  std::vector<std::size_t> sizes(k, 1);
  std::size_t rest = n - k;
  if (rest == 0 || k == 1) {
    if (k == 1) sizes[0] = n;
    return sizes;
  }
  std::vector<double> draw(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    draw[i] = -std::log(1.0 - uniform01(rng));
    total += draw[i];
  }
  std::vector<std::pair<double, std::size_t>> frac(k);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double share = static_cast<double>(rest) * draw[i] / total;
    auto whole = static_cast<std::size_t>(share);
    sizes[i] += whole;
    assigned += whole;
    frac[i] = {share - static_cast<double>(whole), i};
  }
  std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < rest; ++i, ++assigned)
    sizes[frac[i].second] += 1;
  return sizes;
}

// Uniform random parent among the first `count` block vertices whose degree
// is still below the cap; probes forward from a uniform start.
std::size_t pick_parent(const std::vector<std::size_t>& degree,
                        std::size_t count, std::size_t d_max,
                        std::mt19937_64& rng) {
  std::size_t start = uniform_index(rng, count);
  for (std::size_t probe = 0; probe < count; ++probe) {
    std::size_t candidate = (start + probe) % count;
    if (degree[candidate] < d_max) return candidate;
  }
  throw std::logic_error("no parent below the degree cap");
}

}  // namespace

WeightedGraph gen_graph(const InstanceSpec& spec, std::mt19937_64& rng,
                        double edge_multiplier) {
  if (spec.n == 0) throw std::invalid_argument("infeasible: n must be >= 1");
  std::size_t k = spec.structure == Structure::connected ? 1 : spec.k;
  if (k == 0 || k > spec.n)
    throw std::invalid_argument("infeasible: k must be in [1, n]");
  std::vector<std::size_t> sizes = block_sizes(spec.n, k, rng);
  for (std::size_t size : sizes) {
    if (size >= 3 && spec.d_max < 2)
      throw std::invalid_argument(
          "infeasible: spanning a block of size >= 3 needs d_max >= 2");
    if (size == 2 && spec.d_max < 1)
      throw std::invalid_argument(
          "infeasible: spanning a block of size 2 needs d_max >= 1");
  }

  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> used;
  std::vector<std::size_t> degree;
  Vertex base = 0;
  for (std::size_t size : sizes) {
    degree.assign(size, 0);
    // Random spanning tree under the degree cap.
    for (std::size_t i = 1; i < size; ++i) {
      std::size_t parent = pick_parent(degree, i, spec.d_max, rng);
      Vertex u = base + static_cast<Vertex>(parent);
      Vertex v = base + static_cast<Vertex>(i);
      used.insert(edge_key(u, v));
      edges.push_back({std::min(u, v), std::max(u, v),
                       sample_weight(spec.weight_model, rng)});
      ++degree[parent];
      ++degree[i];
    }
    // Extra edges up to the target, rejecting repeats, self loops, and
    // degree violations.
    std::size_t target = std::min(
        static_cast<std::size_t>(
            std::llround(edge_multiplier * static_cast<double>(size))),
        size * spec.d_max / 2);
    std::size_t have = size > 0 ? size - 1 : 0;
    std::size_t tries = 0;
    const std::size_t max_tries = 40 * size + 40;
    while (have < target && tries < max_tries) {
      ++tries;
      std::size_t a = uniform_index(rng, size);
      std::size_t b = uniform_index(rng, size);
      if (a == b) continue;
      if (degree[a] >= spec.d_max || degree[b] >= spec.d_max) continue;
      Vertex u = base + static_cast<Vertex>(std::min(a, b));
      Vertex v = base + static_cast<Vertex>(std::max(a, b));
      if (!used.insert(edge_key(u, v)).second) continue;
      edges.push_back({u, v, sample_weight(spec.weight_model, rng)});
      ++degree[a];
      ++degree[b];
      ++have;
    }
    base += static_cast<Vertex>(size);
  }
  return WeightedGraph(spec.n, edges);
}

InstanceStats instance_stats(const WeightedGraph& g,
                             std::optional<double> alpha) {
  InstanceStats stats;
  stats.n = g.vertex_count();
  stats.m = g.edge_count();
  stats.max_degree = g.max_degree();
  stats.w_max = g.max_weight();
  stats.w_star =
      alpha ? std::pow(static_cast<double>(std::max<std::size_t>(
                           stats.max_degree, 1)),
                       1.0 / *alpha)
            : 1.0;
  return stats;
}

}  // namespace wgr
