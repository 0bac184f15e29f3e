#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "wgr/oracle.hpp"
#include "wgr/recon.hpp"

namespace wgr::detail {

double clamped_loglog(double n);

// ceil(q) floored at 16, saturating at the counter's maximum: an allowance
// past 2^64 cannot bind, and casting it would overflow.
inline std::uint64_t budget_from_double(double q) {
  q = std::max(16.0, std::ceil(q));
  if (q >= 18446744073709551616.0)  // 2^64
    return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(q);
}

std::size_t estimate_sample_count(double k_const, double s, double n);

// Given one center's two-hop stand-in, batch distances from it, extend it
// with every vertex strictly closer to some member than to the center set,
// and brute-force the extended cell. Shared by the layered and single-layer
// reconstructions.
EdgeSet extend_and_probe(OracleSession& session,
                         const std::vector<Vertex>& verts, double thr,
                         Vertex center, const std::vector<Vertex>& two_hop,
                         const std::vector<double>& dist_to_centers,
                         const ReconHooks& hooks);

}  // namespace wgr::detail
