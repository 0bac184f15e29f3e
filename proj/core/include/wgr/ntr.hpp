#pragma once

#include <random>
#include <vector>

#include "wgr/oracle.hpp"
#include "wgr/recon.hpp"

namespace wgr {

// Sizing for the single-layer variant on connected graphs with bounded
// weights. b bounds the closed ball of radius 2*w_max; s is the center
// sample size sqrt(b*n) capped at n.
struct BallParams {
  double b = 1.0;
  double s = 1.0;
  std::uint64_t budget = 0;  // c_Q * n^(3/2) * b^(3/2)
};

// Throws when D^(2*w_max+1) overflows exact double range (> 2^53).
BallParams make_ball_params(std::size_t n, std::size_t max_degree,
                            double w_max, double budget_constant = 50.0);

// {v : dist_row[v] <= radius} in ascending id order. dist_row is indexed
// by global vertex id.
std::vector<Vertex> closed_ball(const std::vector<double>& dist_row,
                                double radius);

// Single reconstruction pass at threshold 1 on a connected graph. Centers
// come from estimated_centers with s from params; each center's two-hop
// stand-in is its distance ball of radius 2*w_max, read off the distance
// rows already paid for during center selection.
EdgeSet nt_rs(OracleSession& session, const std::vector<Vertex>& verts,
              const BallParams& ball, std::mt19937_64& rng,
              const ReconParams& params = {});

// nt_rs under the ball-based budget with restarts, wrapped in a result
// record. Connected graphs only; disconnected inputs are unsupported and
// must be rejected by the caller.
ReconstructionResult nt_r(OracleSession& session,
                          const std::vector<Vertex>& verts,
                          std::mt19937_64& rng,
                          const ReconParams& params = {});

}  // namespace wgr
