#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wgr/gen.hpp"
#include "wgr/graph.hpp"
#include "wgr/recon.hpp"

namespace wgr {

enum class Algo { lbl_r, nt_r, exhaustive_baseline };

std::string to_string(Algo a);
Algo algo_from_string(const std::string& s);

// One (algorithm, instance) cell of an experiment.
struct TrialPoint {
  Algo algo = Algo::lbl_r;
  InstanceSpec spec;
  double centers_constant = 1.0;
  double budget_constant = 50.0;
  double edge_multiplier = 1.5;
  std::size_t max_attempts = 256;
  bool shadow_check = false;
  bool verify = true;  // compare against ground truth and run coverage checks
};

struct TrialRecord {
  std::size_t trial = 0;
  Algo algo = Algo::lbl_r;
  InstanceSpec spec;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  QueryLedger ledger;
  std::uint32_t attempts = 0;
  int break_iteration = -1;
  double w_max = 1.0;
  double w_star = 1.0;
  bool exact = false;
  bool gave_up = false;
  bool failed = false;         // exception other than gave-up
  std::string failure;
  double ms = 0.0;

  // verification instrumentation (verify mode only)
  std::uint64_t coverage_checks = 0;
  std::uint64_t coverage_violations = 0;
  std::uint64_t frontier_violations = 0;
  std::uint64_t shadow_checks = 0;
  std::uint64_t shadow_mismatches = 0;
};

// Generates the instance from (point.spec, seed), runs the algorithm over a
// fresh oracle session, and verifies the recovered edge list exactly when
// point.verify is set. Gave-ups are recorded, not raised.
TrialRecord run_trial(const TrialPoint& point, std::uint64_t seed);

// Same, but on a caller-supplied hidden graph (file-driven runs). The seed
// drives only the algorithm's randomness. Rejects nt_r on disconnected
// inputs.
TrialRecord run_trial_on_graph(const WeightedGraph& g, const TrialPoint& point,
                               std::uint64_t seed,
                               std::ostream* trace = nullptr);

struct ExperimentConfig {
  std::vector<Algo> algos{Algo::lbl_r};
  std::vector<std::size_t> n_values{64};
  std::vector<std::size_t> d_values{3};
  std::vector<double> alpha_values{2.0};
  Structure structure = Structure::connected;
  std::size_t k = 1;
  WeightKind weight_kind = WeightKind::pareto;
  std::optional<double> w_cap;
  std::size_t trials = 5;
  std::uint64_t seed = 1;
  double centers_constant = 1.0;
  double budget_constant = 50.0;
  double edge_multiplier = 1.5;
  std::size_t max_attempts = 256;
  bool verify = true;
  std::string out_csv;  // empty: don't write
};

ExperimentConfig experiment_config_from_json(const std::string& json_text);
std::string to_json(const ExperimentConfig& config);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares fit of ln(y) against ln(x).
SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct ExperimentSummary {
  struct PointSummary {
    Algo algo;
    std::size_t n;
    std::size_t d_max;
    double alpha;
    std::size_t trials = 0;
    std::size_t exact = 0;
    double median_total = 0.0;
  };
  std::vector<PointSummary> points;
  struct AlgoSlope {
    Algo algo;
    double slope;
  };
  std::vector<AlgoSlope> slopes;  // median total vs n, other axes pooled
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  ExperimentSummary summary;
};

// Expands the config grid, runs every trial with a deterministic per-row
// seed, optionally writes CSV, and summarizes. Rows that fail keep their
// slot so trial indices are stable.
ExperimentResult run_experiment(const ExperimentConfig& config);

// CSV surface: fixed header, one row per trial.
extern const char* const kTrialCsvHeader;
void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& rows);
std::string trial_csv_row(const TrialRecord& row);

// Distance queries alone cannot tell a 2-path from its closure triangle:
// both graphs answer identical full q_d tables on the base layer, while a
// single q_w on the closing pair separates them.
struct QdDemoReport {
  bool qd_tables_identical_at_base = false;
  bool qd_tables_differ_at_higher_threshold = false;
  bool distinguished_by_single_qw = false;
  bool closing_edge_is_transitive = false;
  std::string rendered;
};

QdDemoReport qd_indistinguishability_demo();

// Empirical lemma checks ------------------------------------------------

struct WmaxTailReport {
  std::size_t trials = 0;
  std::size_t m = 0;
  double alpha = 0.0;
  double w_star = 0.0;      // d_max^(1/alpha)
  double threshold = 0.0;   // c * w_star
  std::size_t exceeded = 0;
  double fraction = 0.0;
};

// Draws m weights per trial and counts trials whose maximum exceeds
// c * d_max^(1/alpha).
WmaxTailReport wmax_tail_stats(std::size_t m, double alpha, std::size_t d_max,
                               double c, std::size_t trials,
                               std::uint64_t seed);

struct LargestComponentReport {
  std::size_t trials = 0;
  std::size_t n = 0;
  double threshold = 0.0;   // layer threshold with d_max * p = retain_rate
  double bound = 0.0;       // 12 * ln n
  std::size_t within = 0;
  double fraction = 0.0;
  std::size_t max_observed = 0;
};

LargestComponentReport largest_component_stats(std::size_t n,
                                               std::size_t d_max, double alpha,
                                               double retain_rate,
                                               std::size_t trials,
                                               std::uint64_t seed);

struct EarlyTerminationReport {
  std::size_t trials = 0;
  std::vector<int> break_iterations;
  std::vector<int> final_layers;  // floor(log2 w_max) per trial
  std::size_t early = 0;
  double fraction = 0.0;
};

EarlyTerminationReport early_termination_stats(std::size_t n,
                                               std::size_t d_max, double alpha,
                                               std::size_t trials,
                                               std::uint64_t seed,
                                               double centers_constant = 1.0);

}  // namespace wgr
