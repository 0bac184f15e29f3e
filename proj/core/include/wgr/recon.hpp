#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgr/graph.hpp"
#include "wgr/oracle.hpp"

namespace wgr {

// Raised when reconstruct exceeds its restart cap.
class GaveUpError : public std::runtime_error {
public:
  GaveUpError(std::size_t attempts, std::uint64_t budget)
      : std::runtime_error("gave-up: reconstruction exceeded " +
                           std::to_string(attempts) +
                           " attempts at per-attempt budget " +
                           std::to_string(budget)),
        attempts_(attempts) {}
  std::size_t attempts() const { return attempts_; }

private:
  std::size_t attempts_;
};

// One center's exploration record: its two-hop set (or distance ball), and
// the extended cell it induced. Exposed to observers only.
struct CellCover {
  Vertex center = 0;
  std::vector<Vertex> two_hop;
  std::vector<Vertex> extended;
};

// Observation points for tests and verification harnesses. All optional;
// never affect the computation.
struct ReconHooks {
  std::function<void(int attempt)> on_attempt_start;
  std::function<void(int iter, double thr,
                     const std::vector<std::vector<Vertex>>& comps,
                     const EdgeSet& found_so_far)>
      on_iteration;
  std::function<void(const std::vector<Vertex>& comp, double thr,
                     const EdgeSet& sub_edges, bool exhaustive)>
      on_component_done;
  std::function<void(const std::vector<Vertex>& verts, double s,
                     const std::vector<Vertex>& centers)>
      on_centers;
  std::function<void(const CellCover&)> on_cell;
};

struct ReconParams {
  double centers_constant = 1.0;   // K in the estimate sample size
  double budget_constant = 50.0;   // c_Q in the per-attempt budget
  std::size_t max_attempts = 256;  // restart cap before giving up
  std::optional<std::uint64_t> budget_override;  // test hook
  std::optional<double> degree_hint;  // defaults to the announced max degree
  ReconHooks hooks;
};

// Centers plus every distance row paid for while selecting them. Rows and
// the min-distance array are indexed by global vertex id.
struct CenterSelection {
  std::vector<Vertex> centers;
  std::vector<std::vector<double>> center_rows;  // d(centers[i], .)
  std::vector<double> dist_to_centers;           // min over centers
  std::size_t passes = 0;
  std::vector<std::pair<Vertex, double>> removals;  // estimate at removal
};

struct IterationTrace {
  int iteration = 0;
  double threshold = 1.0;
  std::vector<std::size_t> component_sizes;  // discovery order
  std::size_t largest = 0;
  std::size_t exhaustive_components = 0;
  std::size_t reconstructed_components = 0;
};

struct ReconstructionResult {
  std::vector<Edge> edges;
  QueryLedger ledger;
  std::vector<IterationTrace> trace;
  std::uint32_t attempts = 0;     // attempt windows begun
  int break_iteration = -1;       // iteration the size cutoff fired on
  bool broke_early = false;       // cutoff fired before the final layer
};

// Independent inclusion with probability s/|w_set|; returns w_set itself
// when |w_set| <= s. Preserves order.
std::vector<Vertex> sample(const std::vector<Vertex>& w_set, double s,
                           std::mt19937_64& rng);

// Partitions verts into the connected components of the layer using q_c
// only: one membership probe per vertex plus a binary search over the
// current component list on a hit. At most |verts|*(1 + ceil(log2 k))
// probes for k components; exactly |verts|-1 when k == 1.
std::vector<std::vector<Vertex>> find_connected_components(
    OracleSession& session, const std::vector<Vertex>& verts, double thr);

// Two-hop neighborhood of a in the layer, found by q_w scans: one row for
// a, one row per neighbor. Includes a itself. At most
// (deg(a)+1)*|verts| probes.
std::vector<Vertex> find_neighbors(OracleSession& session,
                                   const std::vector<Vertex>& verts, Vertex a,
                                   double thr);

// Absorbs sampled batches into a center set until every remaining vertex
// estimates a cell smaller than 5n/s. Estimates use T = K*s*ln(n)*lnln(n)
// distance probes per vertex per pass (with replacement).
CenterSelection estimated_centers(OracleSession& session,
                                  const std::vector<Vertex>& verts, double s,
                                  double thr, std::mt19937_64& rng,
                                  const ReconParams& params = {});

// q_w over all unordered pairs of verts: |verts|*(|verts|-1)/2 probes.
EdgeSet exhaustive_query(OracleSession& session,
                         const std::vector<Vertex>& verts, double thr);

// Per-attempt query budget: ceil(c_q * d^3 * n^1.5 * ln(n)^2 * lnln(n)),
// floored at 16 so tiny regions keep a workable allowance.
std::uint64_t reconstruct_budget(std::size_t n, double d, double c_q);

// Single reconstruction pass over one connected region of the layer:
// estimated centers, two-hop scans, distance cells, then exhaustive probes
// inside each extended cell. Returns every edge of the region whose weight
// lies in [thr, 2*thr), and possibly more.
EdgeSet reconstruct_sub(OracleSession& session,
                        const std::vector<Vertex>& verts, double thr,
                        std::mt19937_64& rng, const ReconParams& params = {});

// reconstruct_sub under a per-attempt budget with restarts on exhaustion.
// Throws GaveUpError past params.max_attempts.
EdgeSet reconstruct(OracleSession& session, const std::vector<Vertex>& verts,
                    double thr, std::mt19937_64& rng,
                    const ReconParams& params = {});

// Full exact reconstruction by doubling weight layers: per layer, split
// into components, brute-force the small ones, reconstruct the large ones,
// and stop once every component is small.
ReconstructionResult lbl_r(OracleSession& session,
                           const std::vector<Vertex>& verts,
                           std::mt19937_64& rng,
                           const ReconParams& params = {});

}  // namespace wgr
