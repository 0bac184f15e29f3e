#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "wgr/graph.hpp"

namespace wgr {

enum class WeightKind { pareto, uniform_truncated, fixed };

std::string to_string(WeightKind k);
WeightKind weight_kind_from_string(const std::string& s);

// pareto: density alpha * w^-(alpha+1) on [1, inf); a w_cap truncates it.
// uniform_truncated: uniform on [1, w_cap].
// fixed: every weight exactly 1.
struct WeightModel {
  WeightKind kind = WeightKind::pareto;
  double alpha = 2.0;
  std::optional<double> w_cap;
};

enum class Structure { connected, multi_component };

std::string to_string(Structure s);
Structure structure_from_string(const std::string& s);

struct InstanceSpec {
  std::size_t n = 16;
  std::size_t d_max = 3;
  Structure structure = Structure::connected;
  std::size_t k = 1;  // component count for multi_component
  WeightModel weight_model;
  std::uint64_t seed = 0;
};

// Exact flat JSON with fields n, d_max, structure, k, weight_model, alpha,
// w_cap, seed. w_cap serializes as null when unset.
std::string to_json(const InstanceSpec& spec);
InstanceSpec instance_spec_from_json(const std::string& json_text);

// Quantile of the unit-scale power-law tail: F(w) = 1 - w^-alpha on
// [1, inf), so quantile(p) = (1-p)^(-1/alpha).
double pareto_quantile(double p, double alpha);

// One draw >= 1; finite for every rng state.
double pareto_sample(double alpha, std::mt19937_64& rng);

// Inverse-CDF draw conditioned on w <= w_cap.
double truncated_pareto_sample(double alpha, double w_cap,
                               std::mt19937_64& rng);

double sample_weight(const WeightModel& model, std::mt19937_64& rng);

// Random graph honoring the spec: per component a random spanning tree
// plus degree-capped extra edges targeting m ~ min(c_m*n, n*d_max/2);
// multi-component splits n into k blocks by a symmetric Dirichlet draw.
// Weights are i.i.d. from the weight model. Throws on infeasible specs.
WeightedGraph gen_graph(const InstanceSpec& spec, std::mt19937_64& rng,
                        double edge_multiplier = 1.5);

struct InstanceStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t max_degree = 0;
  double w_max = 1.0;
  double w_star = 1.0;  // max_degree^(1/alpha) when alpha applies, else 1
};

InstanceStats instance_stats(const WeightedGraph& g,
                             std::optional<double> alpha);

}  // namespace wgr
