// Acceptance gate: ten end-to-end criteria, one test case each. Every case
// prints a single "[acceptance] NN <label>: PASS|FAIL (details)" verdict
// line computed from the same aggregates its assertions check.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

#include "support/brute.hpp"
#include "wgr/components.hpp"
#include "wgr/gen.hpp"
#include "wgr/harness.hpp"
#include "wgr/ntr.hpp"
#include "wgr/oracle.hpp"
#include "wgr/random.hpp"
#include "wgr/recon.hpp"

using namespace wgr;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::size_t ceil_log2(std::size_t k) {
  std::size_t c = 0;
  while ((std::size_t(1) << c) < k) ++c;
  return c;
}

// Graph on n vertices from an edge-subset mask over the u < v slots in
// lexicographic order, weights per slot.
WeightedGraph graph_from_mask(std::size_t n, std::uint64_t mask,
                              const std::vector<double>& weights) {
  std::vector<Edge> edges;
  std::size_t i = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++i)
      if (mask >> i & 1) edges.push_back({u, v, weights[i]});
  return WeightedGraph(n, std::move(edges));
}

}  // namespace

TEST_CASE("01 exact-reconstruction") {
  const std::vector<std::size_t> ns{16, 32, 64, 128, 256, 512};
  const std::vector<std::size_t> ds{3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> alphas{1.5, 2.0, 3.0};
  auto t0 = std::chrono::steady_clock::now();

  std::size_t total = 0, exact = 0, clean = 0;
  std::uint64_t violations = 0;
  auto run_one = [&](const InstanceSpec& spec) {
    TrialPoint point;
    point.spec = spec;
    TrialRecord rec = run_trial(point, mix_seed(0xACC001, total));
    ++total;
    if (rec.exact) ++exact;
    if (!rec.failed && !rec.gave_up) ++clean;
    violations += rec.coverage_violations + rec.frontier_violations;
  };

  // 6 sizes x 8 degree caps x 3 tail exponents, connected and split
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t n : ns) {
      for (std::size_t d : ds) {
        for (double alpha : alphas) {
          InstanceSpec spec;
          spec.n = n;
          spec.d_max = d;
          spec.weight_model.alpha = alpha;
          if (pass == 1) {
            spec.structure = Structure::multi_component;
            spec.k = 2 + total % 7;
          }
          run_one(spec);
        }
      }
    }
  }
  // 12 more split instances to round the sweep out to 300
  for (std::size_t j = 0; j < 12; ++j) {
    InstanceSpec spec;
    spec.n = ns[j % ns.size()];
    spec.d_max = ds[j % ds.size()];
    spec.structure = Structure::multi_component;
    spec.k = 4;
    run_one(spec);
  }

  double secs = seconds_since(t0);
  bool ok = total == 300 && exact == 300 && clean == 300 &&
            violations == 0 && secs < 300.0;
  std::printf("[acceptance] 01 exact-reconstruction: %s (%zu/%zu exact, %.1fs)\n",
              verdict(ok), exact, total, secs);
  CHECK(total == 300);
  CHECK(exact == 300);
  CHECK(clean == 300);
  CHECK(violations == 0);
  CHECK(secs < 300.0);
}

TEST_CASE("02 bounded-weight-reconstruction") {
  // 100 connected bounded-weight instances; every recovered edge set must
  // match exactly, and every hidden edge must sit inside at least one
  // extended cell grown during the successful attempt.
  const std::vector<std::size_t> ns{16, 32, 48, 64, 96, 128, 192, 256};
  struct Model {
    WeightKind kind;
    double cap;
  };
  const std::vector<Model> models{
      {WeightKind::fixed, 1.0},          {WeightKind::uniform_truncated, 1.5},
      {WeightKind::uniform_truncated, 2.0}, {WeightKind::pareto, 2.0},
      {WeightKind::uniform_truncated, 3.0}, {WeightKind::pareto, 3.0}};

  std::size_t total = 0, exact = 0;
  std::uint64_t edges_checked = 0, uncovered = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    InstanceSpec spec;
    spec.n = ns[i % ns.size()];
    spec.d_max = 2 + i % 3;
    const Model& model = models[i % models.size()];
    spec.weight_model.kind = model.kind;
    if (model.kind != WeightKind::fixed) spec.weight_model.w_cap = model.cap;
    spec.seed = mix_seed(0xACC002, i);
    std::mt19937_64 gen_rng(spec.seed);
    WeightedGraph g = gen_graph(spec, gen_rng);

    OracleSession session(g);
    std::vector<std::unordered_set<Vertex>> cells;
    ReconParams params;
    params.hooks.on_attempt_start = [&](int) { cells.clear(); };
    params.hooks.on_cell = [&](const CellCover& cell) {
      cells.emplace_back(cell.extended.begin(), cell.extended.end());
    };
    std::mt19937_64 rng(mix_seed(spec.seed, 1));
    ReconstructionResult result =
        nt_r(session, all_vertices(spec.n), rng, params);
    ++total;
    if (result.edges == g.edges()) ++exact;
    for (const Edge& e : g.edges()) {
      ++edges_checked;
      bool covered = false;
      for (const auto& cell : cells) {
        if (cell.count(e.u) && cell.count(e.v)) {
          covered = true;
          break;
        }
      }
      if (!covered) ++uncovered;
    }
  }

  bool ok = total == 100 && exact == 100 && edges_checked > 0 && uncovered == 0;
  std::printf(
      "[acceptance] 02 bounded-weight-reconstruction: %s "
      "(%zu/%zu exact, %llu edges cell-covered, %llu uncovered)\n",
      verdict(ok), exact, total,
      static_cast<unsigned long long>(edges_checked),
      static_cast<unsigned long long>(uncovered));
  CHECK(total == 100);
  CHECK(exact == 100);
  CHECK(edges_checked > 0);
  CHECK(uncovered == 0);
}

TEST_CASE("03 layer-coverage") {
  // Direct statement: a single reconstruction pass at threshold thr must
  // return every component edge with weight in [thr, 2*thr).
  std::uint64_t direct_checks = 0, direct_violations = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    InstanceSpec spec;
    spec.n = 48 + 16 * (i % 4);
    spec.d_max = 3 + i % 4;
    spec.weight_model.alpha = (i % 2) ? 1.5 : 2.0;
    spec.seed = mix_seed(0xACC003, i);
    std::mt19937_64 gen_rng(spec.seed);
    WeightedGraph g = gen_graph(spec, gen_rng);
    OracleSession session(g);
    std::mt19937_64 rng(mix_seed(spec.seed, 2));
    EdgeSet got = reconstruct_sub(session, all_vertices(spec.n), 1.0, rng);
    for (const Edge& e : g.edges()) {
      if (e.weight >= 2.0) continue;  // base band only
      ++direct_checks;
      if (!got.contains(e.u, e.v)) ++direct_violations;
    }
  }

  // Instrumented full runs: the same property checked on every component of
  // every layer, higher thresholds included.
  std::uint64_t run_checks = 0, run_violations = 0, frontier = 0;
  std::size_t exact = 0, trials = 0;
  for (std::size_t i = 0; i < 36; ++i) {
    TrialPoint point;
    point.spec.n = 64 << (i % 3);
    point.spec.d_max = (i % 2) ? 3 : 6;
    point.spec.weight_model.alpha = (i % 3 == 0) ? 1.5 : 2.0;
    if (i % 4 == 3) {
      point.spec.structure = Structure::multi_component;
      point.spec.k = 3;
    }
    TrialRecord rec = run_trial(point, mix_seed(0xACC103, i));
    ++trials;
    if (rec.exact) ++exact;
    run_checks += rec.coverage_checks;
    run_violations += rec.coverage_violations;
    frontier += rec.frontier_violations;
  }

  bool ok = direct_checks > 0 && direct_violations == 0 && run_checks > 0 &&
            run_violations == 0 && frontier == 0 && exact == trials;
  std::printf(
      "[acceptance] 03 layer-coverage: %s (%llu direct + %llu instrumented "
      "checks, 0 expected violations, got %llu)\n",
      verdict(ok), static_cast<unsigned long long>(direct_checks),
      static_cast<unsigned long long>(run_checks),
      static_cast<unsigned long long>(direct_violations + run_violations +
                                      frontier));
  CHECK(direct_checks > 0);
  CHECK(direct_violations == 0);
  CHECK(run_checks > 0);
  CHECK(run_violations == 0);
  CHECK(frontier == 0);
  CHECK(exact == trials);
}

TEST_CASE("04 oracle-soundness") {
  // Shadow mode on full-size runs: every charged answer re-derived by the
  // public engines, at least a million of them, zero mismatches.
  std::uint64_t shadow_checks = 0, shadow_mismatches = 0;
  std::size_t shadow_runs = 0;
  bool shadow_counts_match = true;
  while (shadow_checks < 1'000'000) {
    TrialPoint point;
    point.spec.n = 512;
    point.spec.d_max = 4;
    point.shadow_check = true;
    TrialRecord rec = run_trial(point, mix_seed(0xACC004, shadow_runs++));
    shadow_checks += rec.shadow_checks;
    shadow_mismatches += rec.shadow_mismatches;
    if (rec.shadow_checks != rec.ledger.total()) shadow_counts_match = false;
  }

  // Tiny-instance sweep against the naive engines: full edge-subset
  // enumeration through n = 6, a 3000-mask sample at n = 7.
  std::uint64_t sweep_checks = 0, sweep_mismatches = 0;
  std::size_t graphs = 0;
  std::mt19937_64 sweep_rng(0xACC104);
  auto check_graph = [&](const WeightedGraph& g,
                         const std::vector<double>& thrs) {
    OracleSession session(g);
    ++graphs;
    const std::size_t n = g.vertex_count();
    for (double thr : thrs) {
      auto labels = brute::closure_labels(g, thr);
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          double w = g.edge_weight(u, v);
          double expect_w = w >= thr ? w : 0.0;
          ++sweep_checks;
          if (session.q_w(u, v, thr) != expect_w) ++sweep_mismatches;
          ++sweep_checks;
          if (session.q_d(u, v, thr) != brute::shortest_path(g, thr, u, v))
            ++sweep_mismatches;
        }
        std::vector<Vertex> others;
        for (Vertex v = 0; v < n; ++v)
          if (v != u) others.push_back(v);
        int expect_c = 0;
        for (Vertex v : others)
          if (labels[v] == labels[u]) expect_c = 1;
        ++sweep_checks;
        if (session.q_c(u, others, thr) != expect_c) ++sweep_mismatches;
      }
    }
  };
  for (std::size_t n = 2; n <= 6; ++n) {
    const std::size_t slots = n * (n - 1) / 2;
    const std::size_t draws = n <= 5 ? 2 : 1;
    const std::vector<double> thrs =
        n <= 5 ? std::vector<double>{1.0, 2.0, 5.0}
               : std::vector<double>{1.0, 3.0};
    for (std::size_t draw = 0; draw < draws; ++draw) {
      std::vector<double> weights(slots);
      for (double& w : weights) w = 1.0 + 7.0 * uniform01(sweep_rng);
      brute::for_each_graph(
          n, [&](std::size_t i) { return weights[i]; },
          [&](const WeightedGraph& g) { check_graph(g, thrs); });
    }
  }
  {
    const std::size_t n = 7, slots = 21;
    std::vector<double> weights(slots);
    for (double& w : weights) w = 1.0 + 7.0 * uniform01(sweep_rng);
    for (std::size_t trial = 0; trial < 3000; ++trial) {
      std::uint64_t mask = sweep_rng() & ((std::uint64_t(1) << slots) - 1);
      check_graph(graph_from_mask(n, mask, weights), {1.0, 3.0});
    }
  }

  bool ok = shadow_checks >= 1'000'000 && shadow_mismatches == 0 &&
            shadow_counts_match && sweep_checks > 0 && sweep_mismatches == 0;
  std::printf(
      "[acceptance] 04 oracle-soundness: %s (%llu shadow checks / %llu "
      "mismatches; %zu tiny graphs, %llu sweep checks / %llu mismatches)\n",
      verdict(ok), static_cast<unsigned long long>(shadow_checks),
      static_cast<unsigned long long>(shadow_mismatches), graphs,
      static_cast<unsigned long long>(sweep_checks),
      static_cast<unsigned long long>(sweep_mismatches));
  CHECK(shadow_checks >= 1'000'000);
  CHECK(shadow_mismatches == 0);
  CHECK(shadow_counts_match);
  CHECK(sweep_mismatches == 0);
}

TEST_CASE("05 query-accounting") {
  bool baseline_ok = true;
  for (std::size_t n : {17, 40, 101}) {
    TrialPoint point;
    point.algo = Algo::exhaustive_baseline;
    point.spec.n = n;
    TrialRecord rec = run_trial(point, n);
    std::uint64_t pairs = std::uint64_t(n) * (n - 1) / 2;
    if (rec.ledger.q_w != pairs || rec.ledger.q_d != 0 ||
        rec.ledger.q_c != 0 || !rec.exact)
      baseline_ok = false;
    CHECK(rec.ledger.q_w == pairs);
    CHECK(rec.ledger.total() == pairs);
  }

  std::size_t runs = 0, within_bound = 0, exact_k1 = 0, k1_runs = 0;
  for (std::size_t k : {1, 2, 3, 4, 6, 8, 12, 16}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      InstanceSpec spec;
      spec.n = 96;
      spec.d_max = 4;
      if (k > 1) {
        spec.structure = Structure::multi_component;
        spec.k = k;
      }
      spec.seed = mix_seed(0xACC005, runs);
      std::mt19937_64 gen_rng(spec.seed);
      WeightedGraph g = gen_graph(spec, gen_rng);
      OracleSession session(g);
      auto comps = find_connected_components(session, all_vertices(96), 1.0);
      ++runs;
      CHECK(comps.size() == k);
      std::uint64_t bound = 96 * (1 + ceil_log2(k));
      if (session.ledger().q_c <= bound) ++within_bound;
      if (k == 1) {
        ++k1_runs;
        if (session.ledger().q_c == 95) ++exact_k1;
      }
    }
  }

  bool ok = baseline_ok && within_bound == runs && exact_k1 == k1_runs;
  std::printf(
      "[acceptance] 05 query-accounting: %s (baseline exact-count %s; "
      "%zu/%zu partition runs within bound, %zu/%zu k=1 runs at n-1)\n",
      verdict(ok), baseline_ok ? "yes" : "no", within_bound, runs, exact_k1,
      k1_runs);
  CHECK(baseline_ok);
  CHECK(within_bound == runs);
  CHECK(exact_k1 == k1_runs);
}

TEST_CASE("06 subquadratic-trend") {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig config;
  config.algos = {Algo::lbl_r};
  config.n_values = {256, 512, 1024, 2048, 4096};
  config.d_values = {4};
  config.alpha_values = {2.0};
  config.structure = Structure::multi_component;
  config.k = 16;
  config.trials = 20;
  config.seed = 606;
  config.centers_constant = 0.25;
  ExperimentResult result = run_experiment(config);

  std::size_t exact = 0;
  for (const TrialRecord& rec : result.records)
    if (rec.exact) ++exact;
  double slope = result.summary.slopes.empty()
                     ? 99.0
                     : result.summary.slopes[0].slope;
  double median_4096 = 0.0;
  for (const auto& p : result.summary.points)
    if (p.n == 4096) median_4096 = p.median_total;
  const double quadratic_bar = 4096.0 * 4095.0 / 2.0;
  double secs = seconds_since(t0);

  bool ok = exact == result.records.size() && slope <= 1.85 &&
            median_4096 > 0.0 && median_4096 < quadratic_bar && secs < 900.0;
  std::printf(
      "[acceptance] 06 subquadratic-trend: %s (slope %.3f <= 1.85, median@4096 "
      "%.0f < %.0f, %zu/%zu exact, %.1fs)\n",
      verdict(ok), slope, median_4096, quadratic_bar, exact,
      result.records.size(), secs);
  CHECK(exact == result.records.size());
  CHECK(slope <= 1.85);
  CHECK(median_4096 > 0.0);
  CHECK(median_4096 < quadratic_bar);
  CHECK(secs < 900.0);
}

TEST_CASE("07 early-termination") {
  EarlyTerminationReport report =
      early_termination_stats(4096, 8, 2.0, 50, 707, 0.25);

  std::map<int, int> break_hist, final_hist;
  for (int b : report.break_iterations) ++break_hist[b];
  for (int f : report.final_layers) ++final_hist[f];
  std::printf("  break-iteration distribution:");
  for (auto [value, count] : break_hist)
    std::printf(" %d x%d", value, count);
  std::printf("\n  final-layer distribution:");
  for (auto [value, count] : final_hist)
    std::printf(" %d x%d", value, count);
  std::printf("\n");

  bool ok = report.trials == 50 && report.fraction >= 0.90;
  std::printf(
      "[acceptance] 07 early-termination: %s (%zu/%zu stopped before the "
      "final layer, fraction %.2f >= 0.90)\n",
      verdict(ok), report.early, report.trials, report.fraction);
  CHECK(report.trials == 50);
  CHECK(report.fraction >= 0.90);
}

TEST_CASE("08 largest-component") {
  LargestComponentReport report =
      largest_component_stats(5000, 8, 2.0, 0.5, 100, 808);

  bool ok = report.trials == 100 && report.fraction >= 0.95;
  std::printf(
      "[acceptance] 08 largest-component: %s (%zu/%zu trials within "
      "12*ln(n) = %.1f at threshold %.2f; max observed %zu)\n",
      verdict(ok), report.within, report.trials, report.bound,
      report.threshold, report.max_observed);
  CHECK(report.trials == 100);
  CHECK(report.threshold == doctest::Approx(4.0));
  CHECK(report.fraction >= 0.95);
}

TEST_CASE("09 max-weight-tail") {
  WmaxTailReport report = wmax_tail_stats(100000, 2.0, 16, 2.0, 1000, 909);

  bool ok = report.trials == 1000 && report.w_star == 4.0 &&
            report.threshold == 8.0 && report.fraction >= 0.99;
  std::printf(
      "[acceptance] 09 max-weight-tail: %s (P(max > %.0f) = %.3f >= 0.99 "
      "over %zu trials of m = %zu)\n",
      verdict(ok), report.threshold, report.fraction, report.trials,
      report.m);
  CHECK(report.w_star == 4.0);
  CHECK(report.threshold == 8.0);
  CHECK(report.fraction >= 0.99);
}

TEST_CASE("10 distance-query-insufficiency") {
  QdDemoReport report = qd_indistinguishability_demo();
  std::printf("%s\n", report.rendered.c_str());

  bool ok = report.qd_tables_identical_at_base &&
            report.qd_tables_differ_at_higher_threshold &&
            report.distinguished_by_single_qw &&
            report.closing_edge_is_transitive;
  std::printf(
      "[acceptance] 10 distance-query-insufficiency: %s (identical base "
      "tables %s, single weight probe separates %s)\n",
      verdict(ok), report.qd_tables_identical_at_base ? "yes" : "no",
      report.distinguished_by_single_qw ? "yes" : "no");
  CHECK(report.qd_tables_identical_at_base);
  CHECK(report.qd_tables_differ_at_higher_threshold);
  CHECK(report.distinguished_by_single_qw);
  CHECK(report.closing_edge_is_transitive);
}
