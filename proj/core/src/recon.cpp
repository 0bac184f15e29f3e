#include "wgr/recon.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "recon_internal.hpp"
#include "wgr/random.hpp"
#include "wgr/shortest_paths.hpp"

namespace wgr {

namespace detail {

double clamped_loglog(double n) {
  if (n < 3.0) return 1.0;
  return std::max(1.0, std::log(std::log(n)));
}

std::size_t estimate_sample_count(double k_const, double s, double n) {
  if (n <= 1.0) return 1;
  double t = k_const * s * std::log(n) * clamped_loglog(n);
  if (t < 1.0) return 1;
  return static_cast<std::size_t>(std::ceil(t));
}

EdgeSet extend_and_probe(OracleSession& session,
                         const std::vector<Vertex>& verts, double thr,
                         Vertex center, const std::vector<Vertex>& two_hop,
                         const std::vector<double>& dist_to_centers,
                         const ReconHooks& hooks) {
  std::vector<char> in_cell(session.vertex_count(), 0);
  for (Vertex b : two_hop) in_cell[b] = 1;
  if (!two_hop.empty()) {
    BatchTable table =
        session.batch_query(QueryKind::distance, two_hop, verts, thr);
    for (std::size_t r = 0; r < two_hop.size(); ++r) {
      for (std::size_t c = 0; c < verts.size(); ++c) {
        if (table.at(r, c) < dist_to_centers[verts[c]]) in_cell[verts[c]] = 1;
      }
    }
  }
  std::vector<Vertex> extended;
  for (Vertex v : verts) {
    if (in_cell[v]) extended.push_back(v);
  }
  if (hooks.on_cell) hooks.on_cell(CellCover{center, two_hop, extended});
  return exhaustive_query(session, extended, thr);
}

}  // namespace detail

namespace {

// Restores the session's unlimited budget on every exit path.
struct BudgetGuard {
  OracleSession& session;
  ~BudgetGuard() { session.set_budget(std::nullopt); }
};

double effective_degree(const OracleSession& session,
                        const ReconParams& params) {
  double d = params.degree_hint.value_or(
      static_cast<double>(session.announced_max_degree()));
  return std::max(d, 1.0);
}

// Smallest integer c with c^4 >= n, i.e. ceil(n^(1/4)) computed without
// trusting pow() to land on exact quartics.
std::size_t quartic_ceiling(std::size_t n) {
  if (n <= 1) return n;
  auto pow4 = [](std::size_t c) { return c * c * c * c; };
  std::size_t c =
      static_cast<std::size_t>(std::pow(static_cast<double>(n), 0.25));
  while (c > 1 && pow4(c - 1) >= n) --c;
  while (pow4(c) < n) ++c;
  return c;
}

}  // namespace

std::vector<Vertex> sample(const std::vector<Vertex>& w_set, double s,
                           std::mt19937_64& rng) {
  if (static_cast<double>(w_set.size()) <= s) return w_set;
  double p = s / static_cast<double>(w_set.size());
  std::vector<Vertex> out;
  for (Vertex v : w_set) {
    if (uniform01(rng) < p) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<Vertex>> find_connected_components(
    OracleSession& session, const std::vector<Vertex>& verts, double thr) {
  std::vector<std::vector<Vertex>> comps;
  if (verts.empty()) return comps;
  comps.push_back({verts[0]});
  std::vector<Vertex> probe;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    Vertex v = verts[i];
    probe.clear();
    for (const auto& comp : comps)
      probe.insert(probe.end(), comp.begin(), comp.end());
    if (session.q_c(v, probe, thr) == 0) {
      comps.push_back({v});
      continue;
    }
    // Binary search over the component list: test the first half, recurse
    // into whichever half answered yes. One query per halving level.
    std::size_t lo = 0;
    std::size_t hi = comps.size();
    while (hi - lo > 1) {
      std::size_t mid = lo + (hi - lo) / 2;
      probe.clear();
      for (std::size_t j = lo; j < mid; ++j)
        probe.insert(probe.end(), comps[j].begin(), comps[j].end());
      if (session.q_c(v, probe, thr) == 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    comps[lo].push_back(v);
  }
  return comps;
}

std::vector<Vertex> find_neighbors(OracleSession& session,
                                   const std::vector<Vertex>& verts, Vertex a,
                                   double thr) {
  std::vector<Vertex> nbrs;
  for (Vertex v : verts) {
    if (v != a && session.q_w(a, v, thr) != 0.0) nbrs.push_back(v);
  }
  std::vector<char> seen(session.vertex_count(), 0);
  seen[a] = 1;
  for (Vertex b : nbrs) seen[b] = 1;
  for (Vertex b : nbrs) {
    for (Vertex v : verts) {
      if (v != b && session.q_w(b, v, thr) != 0.0) seen[v] = 1;
    }
  }
  std::vector<Vertex> out;
  for (Vertex v : verts) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

CenterSelection estimated_centers(OracleSession& session,
                                  const std::vector<Vertex>& verts, double s,
                                  double thr, std::mt19937_64& rng,
                                  const ReconParams& params) {
  if (verts.empty()) throw std::invalid_argument("invalid-set: empty universe");
  if (s <= 0.0) throw std::invalid_argument("invalid-set: sample size <= 0");
  const std::size_t n = verts.size();
  CenterSelection out;
  out.dist_to_centers.assign(session.vertex_count(), kInfDist);

  const std::size_t draws = detail::estimate_sample_count(
      params.centers_constant, s, static_cast<double>(n));
  const double keep_threshold = 5.0 * static_cast<double>(n) / s;

  std::vector<Vertex> w_set = verts;
  std::vector<Vertex> x;
  x.reserve(draws);
  while (!w_set.empty()) {
    std::vector<Vertex> fresh = sample(w_set, s, rng);
    // With no centers yet there is nothing to measure against; redraw.
    if (out.centers.empty() && fresh.empty()) continue;
    if (!fresh.empty()) {
      BatchTable table =
          session.batch_query(QueryKind::distance, fresh, verts, thr);
      for (std::size_t r = 0; r < fresh.size(); ++r) {
        std::vector<double> row(session.vertex_count(), kInfDist);
        for (std::size_t c = 0; c < n; ++c) {
          double d = table.at(r, c);
          row[verts[c]] = d;
          if (d < out.dist_to_centers[verts[c]])
            out.dist_to_centers[verts[c]] = d;
        }
        out.center_rows.push_back(std::move(row));
      }
      out.centers.insert(out.centers.end(), fresh.begin(), fresh.end());
    }
    ++out.passes;

    std::vector<Vertex> retained;
    for (Vertex w : w_set) {
      x.clear();
      for (std::size_t i = 0; i < draws; ++i)
        x.push_back(verts[uniform_index(rng, n)]);
      BatchTable table =
          session.batch_query(QueryKind::distance, x, {w}, thr);
      std::size_t closer = 0;
      for (std::size_t i = 0; i < draws; ++i) {
        if (table.at(i, 0) < out.dist_to_centers[x[i]]) ++closer;
      }
      double estimate = static_cast<double>(closer) *
                        static_cast<double>(n) / static_cast<double>(draws);
      if (estimate >= keep_threshold) {
        retained.push_back(w);
      } else {
        out.removals.push_back({w, estimate});
      }
    }
    w_set = std::move(retained);
  }
  if (params.hooks.on_centers) params.hooks.on_centers(verts, s, out.centers);
  return out;
}

EdgeSet exhaustive_query(OracleSession& session,
                         const std::vector<Vertex>& verts, double thr) {
  EdgeSet edges;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      double w = session.q_w(verts[i], verts[j], thr);
      if (w != 0.0) edges.add(verts[i], verts[j], w);
    }
  }
  return edges;
}

EdgeSet reconstruct_sub(OracleSession& session,
                        const std::vector<Vertex>& verts, double thr,
                        std::mt19937_64& rng, const ReconParams& params) {
  const double d = effective_degree(session, params);
  const double s = d * std::sqrt(static_cast<double>(verts.size()));
  CenterSelection centers =
      estimated_centers(session, verts, s, thr, rng, params);
  EdgeSet edges;
  for (Vertex a : centers.centers) {
    std::vector<Vertex> two_hop = find_neighbors(session, verts, a, thr);
    edges.merge(detail::extend_and_probe(session, verts, thr, a, two_hop,
                                         centers.dist_to_centers,
                                         params.hooks));
  }
  return edges;
}

std::uint64_t reconstruct_budget(std::size_t n, double d, double c_q) {
  double nn = static_cast<double>(n);
  double ln = nn > 1.0 ? std::log(nn) : 0.0;
  return detail::budget_from_double(c_q * d * d * d * std::pow(nn, 1.5) *
                                    ln * ln * detail::clamped_loglog(nn));
}

EdgeSet reconstruct(OracleSession& session, const std::vector<Vertex>& verts,
                    double thr, std::mt19937_64& rng,
                    const ReconParams& params) {
  const double d = effective_degree(session, params);
  const std::uint64_t budget =
      params.budget_override.value_or(reconstruct_budget(
          verts.size(), d, params.budget_constant));
  BudgetGuard guard{session};
  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    session.reset_attempt();
    session.set_budget(budget);
    if (params.hooks.on_attempt_start)
      params.hooks.on_attempt_start(session.ledger().attempt_index);
    try {
      return reconstruct_sub(session, verts, thr, rng, params);
    } catch (const BudgetExhaustedError&) {
      // Fresh randomness next attempt; the ledger keeps the spent queries.
    }
  }
  throw GaveUpError(params.max_attempts, budget);
}

ReconstructionResult lbl_r(OracleSession& session,
                           const std::vector<Vertex>& verts,
                           std::mt19937_64& rng, const ReconParams& params) {
  ReconstructionResult result;
  EdgeSet acc;
  const std::size_t cutoff = quartic_ceiling(verts.size());
  const int j_max = static_cast<int>(
      std::floor(std::log2(std::max(session.announced_wmax(), 1.0))));
  for (int j = 0; j <= j_max; ++j) {
    const double thr = std::ldexp(1.0, j);
    std::vector<std::vector<Vertex>> comps =
        find_connected_components(session, verts, thr);
    if (params.hooks.on_iteration)
      params.hooks.on_iteration(j, thr, comps, acc);
    IterationTrace trace;
    trace.iteration = j;
    trace.threshold = thr;
    std::size_t largest = 0;
    for (const auto& comp : comps) {
      trace.component_sizes.push_back(comp.size());
      largest = std::max(largest, comp.size());
      bool exhaustive = comp.size() <= cutoff;
      EdgeSet sub = exhaustive
                        ? exhaustive_query(session, comp, thr)
                        : reconstruct(session, comp, thr, rng, params);
      if (exhaustive) {
        ++trace.exhaustive_components;
      } else {
        ++trace.reconstructed_components;
      }
      if (params.hooks.on_component_done)
        params.hooks.on_component_done(comp, thr, sub, exhaustive);
      acc.merge(sub);
    }
    trace.largest = largest;
    result.trace.push_back(std::move(trace));
    result.break_iteration = j;
    if (largest <= cutoff) {
      result.broke_early = j < j_max;
      break;
    }
  }
  result.edges = acc.sorted_edges();
  result.ledger = session.ledger();
  result.attempts = session.ledger().attempt_index;
  return result;
}

}  // namespace wgr
