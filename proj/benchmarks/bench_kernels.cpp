#include <benchmark/benchmark.h>

#include "sdma/beamforming.hpp"
#include "sdma/mac_schemes.hpp"
#include "sdma/rf_model.hpp"
#include "sdma/sim_harness.hpp"

using namespace sdma;

namespace {

std::vector<Eigen::VectorXcd> random_columns(Rng& rng, int n, int count) {
  std::vector<Eigen::VectorXcd> cols;
  for (int i = 0; i < count; ++i) cols.push_back(rng.cgaussian_vector(n));
  return cols;
}

void BM_TxBeamnull(benchmark::State& state) {
  Rng rng(1);
  const auto cols = random_columns(rng, 4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tx_beamnull(cols, 4));
}
BENCHMARK(BM_TxBeamnull)->Arg(1)->Arg(3)->Arg(7);

void BM_TxBeamform(benchmark::State& state) {
  SimParams params;
  Rng rng(2);
  const auto cols = random_columns(rng, 4, static_cast<int>(state.range(0)));
  const CandidateBasis basis = candidate_basis(cols, 4);
  const Eigen::MatrixXcd h = rng.cgaussian_matrix(4, 4);
  Eigen::MatrixXcd cov =
      params.noise_var_mw * Eigen::MatrixXcd::Identity(4, 4);
  for (const auto& v : random_columns(rng, 4, 2))
    cov += params.noise_var_mw * v * v.adjoint();
  for (auto _ : state)
    benchmark::DoNotOptimize(tx_beamform(basis, h, 1e-9, params, cov));
}
BENCHMARK(BM_TxBeamform)->Arg(0)->Arg(2)->Arg(3);

void BM_RxDetectors(benchmark::State& state) {
  Rng rng(3);
  const Eigen::VectorXcd h = rng.cgaussian_vector(4);
  const auto interferers = random_columns(rng, 4, 3);
  Eigen::MatrixXcd b(4, 4);
  b.col(0) = h;
  for (int j = 0; j < 3; ++j) b.col(j + 1) = interferers[j];
  for (auto _ : state) {
    benchmark::DoNotOptimize(rx_zf(b));
    benchmark::DoNotOptimize(rx_mmse(h, interferers, 1.0));
  }
}
BENCHMARK(BM_RxDetectors);

void BM_RunConcurrent(benchmark::State& state) {
  SimParams params;
  const McsTable table = McsTable::default_table();
  const int k = static_cast<int>(state.range(0));
  Rng rng(4);
  const Topology topo = generate_topology(k, params, rng);
  const ChannelSet cs = generate_channels(topo, params, 0.0, rng);
  SchemeConfig cfg;
  cfg.name = "bench";
  cfg.tx_strategy = TxStrategy::Beamform;
  cfg.rx_strategy = RxStrategy::UniversalMmse;
  cfg.adaptive_mcs = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_concurrent(cfg, cs, topo, params, table));
}
BENCHMARK(BM_RunConcurrent)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMillisecond);

void BM_RunNonConcurrent(benchmark::State& state) {
  SimParams params;
  const McsTable table = McsTable::default_table();
  Rng rng(5);
  const Topology topo = generate_topology(4, params, rng);
  const ChannelSet cs = generate_channels(topo, params, 0.0, rng);
  SchemeConfig cfg;
  cfg.name = "bench";
  cfg.kind = SchemeKind::NonConcurrent;
  cfg.adaptive_mcs = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_nonconcurrent(cfg, cs, topo, params, table));
}
BENCHMARK(BM_RunNonConcurrent)->Unit(benchmark::kMillisecond);

void BM_SmallSweep(benchmark::State& state) {
  Scenario s;
  s.name = "bench";
  SchemeConfig cfg;
  cfg.name = "zf";
  s.schemes = {cfg};
  s.k_values = {4};
  s.n_topologies = 4;
  s.params.n_subcarriers = 16;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s, 1));
}
BENCHMARK(BM_SmallSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
