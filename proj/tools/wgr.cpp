#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wgr/components.hpp"
#include "wgr/gen.hpp"
#include "wgr/graph_io.hpp"
#include "wgr/harness.hpp"
#include "wgr/random.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_summary(const wgr::ExperimentSummary& summary) {
  for (const auto& p : summary.points) {
    std::cout << "algo=" << wgr::to_string(p.algo) << " n=" << p.n
              << " dmax=" << p.d_max << " alpha=" << wgr::format_double(p.alpha)
              << " trials=" << p.trials << " exact=" << p.exact << '/'
              << p.trials
              << " median_total=" << wgr::format_double(p.median_total)
              << '\n';
  }
  for (const auto& s : summary.slopes) {
    std::cout << "slope " << wgr::to_string(s.algo) << ": "
              << wgr::format_double(s.slope) << " (log total vs log n)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"instrumented oracle simulator and exact graph reconstruction"};
  app.require_subcommand(1);
  int rc = 0;

  // gen ------------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "generate a hidden instance");
  wgr::InstanceSpec gen_spec;
  std::string gen_structure = "connected";
  std::string gen_weights = "pareto";
  std::optional<double> gen_wcap;
  double gen_multiplier = 1.5;
  std::string gen_out;
  bool gen_print_spec = false;
  gen_cmd->add_option("--n", gen_spec.n, "vertex count")->capture_default_str();
  gen_cmd->add_option("--dmax", gen_spec.d_max, "max degree")
      ->capture_default_str();
  gen_cmd->add_option("--structure", gen_structure,
                      "connected | multi_component")
      ->capture_default_str();
  gen_cmd->add_option("--k", gen_spec.k, "component count")
      ->capture_default_str();
  gen_cmd->add_option("--weight-model", gen_weights,
                      "pareto | uniform_truncated | fixed")
      ->capture_default_str();
  gen_cmd->add_option("--alpha", gen_spec.weight_model.alpha,
                      "power-law tail index")
      ->capture_default_str();
  gen_cmd->add_option("--w-cap", gen_wcap, "weight cap");
  gen_cmd->add_option("--seed", gen_spec.seed, "rng seed")
      ->capture_default_str();
  gen_cmd->add_option("--edge-multiplier", gen_multiplier,
                      "extra-edge target factor")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "write the graph to this file");
  gen_cmd->add_flag("--spec-json", gen_print_spec, "print the spec as JSON");
  gen_cmd->callback([&] {
    gen_spec.structure = wgr::structure_from_string(gen_structure);
    gen_spec.weight_model.kind = wgr::weight_kind_from_string(gen_weights);
    gen_spec.weight_model.w_cap = gen_wcap;
    std::mt19937_64 rng(gen_spec.seed);
    wgr::WeightedGraph g = wgr::gen_graph(gen_spec, rng, gen_multiplier);
    wgr::InstanceStats stats = wgr::instance_stats(
        g, gen_spec.weight_model.kind == wgr::WeightKind::pareto
               ? std::optional<double>(gen_spec.weight_model.alpha)
               : std::nullopt);
    std::cout << "n=" << stats.n << " m=" << stats.m
              << " max_degree=" << stats.max_degree
              << " wmax=" << wgr::format_double(stats.w_max)
              << " wstar=" << wgr::format_double(stats.w_star)
              << " components=" << wgr::components(wgr::layer(g, 1.0)).size()
              << '\n';
    if (gen_print_spec) std::cout << wgr::to_json(gen_spec) << '\n';
    if (!gen_out.empty()) {
      wgr::write_graph_file(gen_out, g);
      std::cout << "wrote " << gen_out << '\n';
    }
  });

  // run ------------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "run one reconstruction trial");
  wgr::TrialPoint point;
  std::string run_algo = "lbl_r";
  std::string run_structure = "connected";
  std::string run_weights = "pareto";
  std::optional<double> run_wcap;
  std::uint64_t run_seed = 1;
  std::string run_graph_file;
  std::string run_trace_file;
  bool run_no_verify = false;
  run_cmd->add_option("--algo", run_algo,
                      "lbl_r | nt_r | exhaustive_baseline")
      ->capture_default_str();
  run_cmd->add_option("--n", point.spec.n, "vertex count")
      ->capture_default_str();
  run_cmd->add_option("--dmax", point.spec.d_max, "max degree")
      ->capture_default_str();
  run_cmd->add_option("--structure", run_structure,
                      "connected | multi_component")
      ->capture_default_str();
  run_cmd->add_option("--k", point.spec.k, "component count")
      ->capture_default_str();
  run_cmd->add_option("--weight-model", run_weights,
                      "pareto | uniform_truncated | fixed")
      ->capture_default_str();
  run_cmd->add_option("--alpha", point.spec.weight_model.alpha,
                      "power-law tail index")
      ->capture_default_str();
  run_cmd->add_option("--w-cap", run_wcap, "weight cap");
  run_cmd->add_option("--seed", run_seed, "trial seed")->capture_default_str();
  run_cmd->add_option("--graph-file", run_graph_file,
                      "reconstruct this graph instead of generating one");
  run_cmd->add_option("--trace", run_trace_file,
                      "append one line per oracle query to this file");
  run_cmd->add_option("--centers-constant", point.centers_constant,
                      "center estimate sample factor")
      ->capture_default_str();
  run_cmd->add_option("--budget-constant", point.budget_constant,
                      "per-attempt budget factor")
      ->capture_default_str();
  run_cmd->add_option("--edge-multiplier", point.edge_multiplier,
                      "extra-edge target factor")
      ->capture_default_str();
  run_cmd->add_option("--max-attempts", point.max_attempts, "restart cap")
      ->capture_default_str();
  run_cmd->add_flag("--shadow", point.shadow_check,
                    "re-derive every oracle answer");
  run_cmd->add_flag("--no-verify", run_no_verify,
                    "skip ground-truth verification");
  run_cmd->callback([&] {
    point.algo = wgr::algo_from_string(run_algo);
    point.spec.structure = wgr::structure_from_string(run_structure);
    point.spec.weight_model.kind = wgr::weight_kind_from_string(run_weights);
    point.spec.weight_model.w_cap = run_wcap;
    point.verify = !run_no_verify;
    std::ofstream trace;
    std::ostream* trace_ptr = nullptr;
    if (!run_trace_file.empty()) {
      trace.open(run_trace_file);
      if (!trace) throw std::runtime_error("cannot write " + run_trace_file);
      trace_ptr = &trace;
    }
    wgr::TrialRecord rec;
    if (!run_graph_file.empty()) {
      wgr::WeightedGraph g = wgr::read_graph_file(run_graph_file);
      // echo the file's actual shape, not the spec defaults
      point.spec.n = g.vertex_count();
      point.spec.d_max = g.max_degree();
      rec = wgr::run_trial_on_graph(g, point, run_seed, trace_ptr);
    } else if (trace_ptr != nullptr) {
      std::mt19937_64 rng(run_seed);
      wgr::InstanceSpec spec = point.spec;
      spec.seed = run_seed;
      wgr::WeightedGraph g = wgr::gen_graph(spec, rng, point.edge_multiplier);
      rec = wgr::run_trial_on_graph(g, point, run_seed, trace_ptr);
    } else {
      rec = wgr::run_trial(point, run_seed);
    }
    if (rec.failed) throw std::runtime_error(rec.failure);
    std::cout << "instance: n=" << rec.n << " m=" << rec.m
              << " dmax=" << rec.spec.d_max
              << " wmax=" << wgr::format_double(rec.w_max) << " seed=" << rec.seed
              << '\n';
    std::cout << "queries: qw=" << rec.ledger.q_w << " qd=" << rec.ledger.q_d
              << " qc=" << rec.ledger.q_c << " total=" << rec.ledger.total()
              << '\n';
    std::cout << "attempts=" << rec.attempts
              << " break_iter=" << rec.break_iteration << '\n';
    if (rec.gave_up) {
      std::cout << "gave up after " << rec.attempts << " attempts\n";
      rc = 2;
    } else if (point.verify) {
      std::cout << "exact: " << (rec.exact ? "yes" : "NO") << '\n';
      if (!rec.exact) rc = 3;
    }
    if (point.shadow_check)
      std::cout << "shadow: " << rec.shadow_checks << " checks, "
                << rec.shadow_mismatches << " mismatches\n";
    std::cout << wgr::kTrialCsvHeader << '\n'
              << wgr::trial_csv_row(rec) << '\n';
  });

  // bench ----------------------------------------------------------------
  auto* bench_cmd =
      app.add_subcommand("bench", "run an experiment grid from a JSON config");
  std::string bench_config;
  std::string bench_out_override;
  bench_cmd->add_option("--config", bench_config, "JSON config file")
      ->required();
  bench_cmd->add_option("--out", bench_out_override, "override out_csv");
  bench_cmd->callback([&] {
    wgr::ExperimentConfig config =
        wgr::experiment_config_from_json(read_file(bench_config));
    if (!bench_out_override.empty()) config.out_csv = bench_out_override;
    wgr::ExperimentResult result = wgr::run_experiment(config);
    print_summary(result.summary);
    if (!config.out_csv.empty())
      std::cout << "wrote " << config.out_csv << " (" << result.records.size()
                << " rows)\n";
  });

  // demo-qd --------------------------------------------------------------
  auto* demo_cmd = app.add_subcommand(
      "demo-qd", "show that distance queries alone cannot pin down edges");
  demo_cmd->callback([&] {
    wgr::QdDemoReport report = wgr::qd_indistinguishability_demo();
    std::cout << report.rendered;
    bool ok = report.qd_tables_identical_at_base &&
              report.qd_tables_differ_at_higher_threshold &&
              report.distinguished_by_single_qw &&
              report.closing_edge_is_transitive;
    if (!ok) rc = 4;
  });

  // lemma ----------------------------------------------------------------
  auto* lemma_cmd =
      app.add_subcommand("lemma", "empirical checks of the sizing estimates");
  std::string lemma_kind;
  std::size_t lemma_m = 100000;
  std::size_t lemma_n = 1024;
  std::size_t lemma_d = 8;
  double lemma_alpha = 2.0;
  double lemma_c = 4.0;
  double lemma_retain = 0.5;
  std::size_t lemma_trials = 100;
  std::uint64_t lemma_seed = 1;
  double lemma_centers = 1.0;
  lemma_cmd
      ->add_option("--kind", lemma_kind,
                   "wmax | largest-component | early-termination")
      ->required();
  lemma_cmd->add_option("--m", lemma_m, "draws per trial (wmax)")
      ->capture_default_str();
  lemma_cmd->add_option("--n", lemma_n, "vertex count")->capture_default_str();
  lemma_cmd->add_option("--dmax", lemma_d, "max degree")->capture_default_str();
  lemma_cmd->add_option("--alpha", lemma_alpha, "power-law tail index")
      ->capture_default_str();
  lemma_cmd->add_option("--c", lemma_c, "tail threshold factor (wmax)")
      ->capture_default_str();
  lemma_cmd
      ->add_option("--retain", lemma_retain,
                   "dmax * edge survival probability (largest-component)")
      ->capture_default_str();
  lemma_cmd->add_option("--trials", lemma_trials, "trial count")
      ->capture_default_str();
  lemma_cmd->add_option("--seed", lemma_seed, "rng seed")
      ->capture_default_str();
  lemma_cmd
      ->add_option("--centers-constant", lemma_centers,
                   "center estimate sample factor (early-termination)")
      ->capture_default_str();
  lemma_cmd->callback([&] {
    if (lemma_kind == "wmax") {
      wgr::WmaxTailReport r = wgr::wmax_tail_stats(
          lemma_m, lemma_alpha, lemma_d, lemma_c, lemma_trials, lemma_seed);
      std::cout << "max weight of m=" << r.m << " draws vs "
                << wgr::format_double(lemma_c)
                << " * dmax^(1/alpha) = " << wgr::format_double(r.threshold)
                << '\n';
      std::cout << "exceeded in " << r.exceeded << '/' << r.trials
                << " trials (fraction " << wgr::format_double(r.fraction)
                << ")\n";
    } else if (lemma_kind == "largest-component") {
      wgr::LargestComponentReport r = wgr::largest_component_stats(
          lemma_n, lemma_d, lemma_alpha, lemma_retain, lemma_trials,
          lemma_seed);
      std::cout << "layer threshold " << wgr::format_double(r.threshold)
                << " keeps each edge with probability "
                << wgr::format_double(lemma_retain) << "/dmax\n";
      std::cout << "largest component <= 12 ln n = "
                << wgr::format_double(r.bound) << " in " << r.within << '/'
                << r.trials << " trials (fraction "
                << wgr::format_double(r.fraction)
                << ", max observed " << r.max_observed << ")\n";
    } else if (lemma_kind == "early-termination") {
      wgr::EarlyTerminationReport r = wgr::early_termination_stats(
          lemma_n, lemma_d, lemma_alpha, lemma_trials, lemma_seed,
          lemma_centers);
      std::cout << "layer doubling stopped before floor(log2 wmax) in "
                << r.early << '/' << r.trials << " trials (fraction "
                << wgr::format_double(r.fraction) << ")\n";
    } else {
      throw std::runtime_error("unknown lemma kind: " + lemma_kind);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
