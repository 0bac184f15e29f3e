#include "wgr/ntr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "recon_internal.hpp"
#include "wgr/shortest_paths.hpp"

namespace wgr {

namespace {

struct BudgetGuard {
  OracleSession& session;
  ~BudgetGuard() { session.set_budget(std::nullopt); }
};

}  // namespace

BallParams make_ball_params(std::size_t n, std::size_t max_degree,
                            double w_max, double budget_constant) {
  if (w_max < 1.0)
    throw std::invalid_argument("invalid-threshold: w_max must be >= 1");
  const double d = static_cast<double>(max_degree);
  const double depth = 2.0 * w_max + 1.0;
  BallParams out;
  if (d < 2.0) {
    // Degree <= 1: a ball of radius 2*w_max holds at most one vertex per
    // hop level.
    out.b = depth;
  } else {
    if (depth * std::log2(d) > 53.0)
      throw std::invalid_argument(
          "infeasible: degree^(2*w_max+1) exceeds exact integer range");
    out.b = (std::pow(d, depth) - 1.0) / (d - 1.0);
  }
  const double nn = static_cast<double>(n);
  out.s = std::min(std::sqrt(out.b * nn), nn);
  out.budget = detail::budget_from_double(budget_constant *
                                          std::pow(nn, 1.5) *
                                          std::pow(out.b, 1.5));
  return out;
}

std::vector<Vertex> closed_ball(const std::vector<double>& dist_row,
                                double radius) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < dist_row.size(); ++v) {
    if (dist_row[v] <= radius) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

EdgeSet nt_rs(OracleSession& session, const std::vector<Vertex>& verts,
              const BallParams& ball, std::mt19937_64& rng,
              const ReconParams& params) {
  const double thr = 1.0;
  const double radius = 2.0 * session.announced_wmax();
  CenterSelection centers =
      estimated_centers(session, verts, ball.s, thr, rng, params);
  EdgeSet edges;
  for (std::size_t i = 0; i < centers.centers.size(); ++i) {
    std::vector<Vertex> two_hop =
        closed_ball(centers.center_rows[i], radius);
    edges.merge(detail::extend_and_probe(session, verts, thr,
                                         centers.centers[i], two_hop,
                                         centers.dist_to_centers,
                                         params.hooks));
  }
  return edges;
}

ReconstructionResult nt_r(OracleSession& session,
                          const std::vector<Vertex>& verts,
                          std::mt19937_64& rng, const ReconParams& params) {
  const BallParams ball =
      make_ball_params(verts.size(), session.announced_max_degree(),
                       session.announced_wmax(), params.budget_constant);
  const std::uint64_t budget = params.budget_override.value_or(ball.budget);
  ReconstructionResult result;
  EdgeSet edges;
  bool done = false;
  {
    BudgetGuard guard{session};
    for (std::size_t attempt = 0; attempt < params.max_attempts && !done;
         ++attempt) {
      session.reset_attempt();
      session.set_budget(budget);
      if (params.hooks.on_attempt_start)
        params.hooks.on_attempt_start(session.ledger().attempt_index);
      try {
        edges = nt_rs(session, verts, ball, rng, params);
        done = true;
      } catch (const BudgetExhaustedError&) {
      }
    }
  }
  if (!done) throw GaveUpError(params.max_attempts, budget);
  result.edges = edges.sorted_edges();
  result.ledger = session.ledger();
  result.attempts = session.ledger().attempt_index;
  return result;
}

}  // namespace wgr
