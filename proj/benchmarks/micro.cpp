#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "wgr/components.hpp"
#include "wgr/gen.hpp"
#include "wgr/oracle.hpp"
#include "wgr/random.hpp"
#include "wgr/recon.hpp"
#include "wgr/shortest_paths.hpp"

namespace {

wgr::WeightedGraph make_instance(std::size_t n) {
  wgr::InstanceSpec spec;
  spec.n = n;
  spec.d_max = 8;
  spec.seed = 42;
  std::mt19937_64 rng(spec.seed);
  return wgr::gen_graph(spec, rng);
}

void bm_gen_graph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    wgr::InstanceSpec spec;
    spec.n = n;
    spec.d_max = 8;
    spec.seed = 42;
    std::mt19937_64 rng(spec.seed);
    benchmark::DoNotOptimize(wgr::gen_graph(spec, rng));
  }
}
BENCHMARK(bm_gen_graph)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void bm_qd_single(benchmark::State& state) {
  auto g = make_instance(static_cast<std::size_t>(state.range(0)));
  wgr::OracleSession session(g);
  std::mt19937_64 rng(7);
  const auto n = g.vertex_count();
  for (auto _ : state) {
    auto u = static_cast<wgr::Vertex>(wgr::uniform_index(rng, n));
    auto v = static_cast<wgr::Vertex>(wgr::uniform_index(rng, n));
    benchmark::DoNotOptimize(session.q_d(u, v, 1.0));
  }
}
BENCHMARK(bm_qd_single)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void bm_qd_batch_row(benchmark::State& state) {
  auto g = make_instance(static_cast<std::size_t>(state.range(0)));
  wgr::OracleSession session(g);
  std::vector<wgr::Vertex> all(g.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  std::vector<wgr::Vertex> one{0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        session.batch_query(wgr::QueryKind::distance, one, all, 1.0));
  }
}
BENCHMARK(bm_qd_batch_row)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void bm_components(benchmark::State& state) {
  auto g = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wgr::components(wgr::layer(g, 2.0)));
  }
}
BENCHMARK(bm_components)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void bm_lbl_r(benchmark::State& state) {
  auto g = make_instance(static_cast<std::size_t>(state.range(0)));
  std::vector<wgr::Vertex> all(g.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  for (auto _ : state) {
    wgr::OracleSession session(g);
    std::mt19937_64 rng(9);
    benchmark::DoNotOptimize(wgr::lbl_r(session, all, rng));
  }
}
BENCHMARK(bm_lbl_r)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}

