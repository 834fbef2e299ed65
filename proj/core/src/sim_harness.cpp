#include "sdma/sim_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace sdma {

std::uint64_t topology_seed(std::uint64_t base_seed, int k,
                            int topology_index) {
  return mix_seed(base_seed, static_cast<std::uint64_t>(k),
                  static_cast<std::uint64_t>(topology_index));
}

SweepResult run_scenario(const Scenario& scenario, int n_threads) {
  if (scenario.schemes.empty())
    throw std::invalid_argument("run_scenario: no schemes");
  if (scenario.k_values.empty())
    throw std::invalid_argument("run_scenario: no K values");
  if (scenario.n_topologies < 1)
    throw std::invalid_argument("run_scenario: n_topologies must be >= 1");
  scenario.params.validate();

  const int n_schemes = static_cast<int>(scenario.schemes.size());
  const int n_k = static_cast<int>(scenario.k_values.size());
  const int n_topo = scenario.n_topologies;

  // samples[scheme][k][t]; filled independently per (k, t) cell so the
  // reduction does not depend on worker scheduling.
  std::vector<std::vector<std::vector<double>>> samples(
      n_schemes, std::vector<std::vector<double>>(
                     n_k, std::vector<double>(n_topo, 0.0)));

  auto eval_cell = [&](int ki, int t) {
    const int k = scenario.k_values[ki];
    Rng rng(topology_seed(scenario.base_seed, k, t));
    const Topology topo = generate_topology(k, scenario.params, rng);
    const ChannelSet channels =
        generate_channels(topo, scenario.params, 0.0, rng);
    for (int s = 0; s < n_schemes; ++s) {
      const SchemeResult r = run_scheme(scenario.schemes[s], channels, topo,
                                        scenario.params, scenario.mcs_table);
      samples[s][ki][t] = r.sum_throughput_mbps;
    }
  };

  const int total_cells = n_k * n_topo;
  if (n_threads <= 0)
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, total_cells));
  if (n_threads == 1) {
    for (int ki = 0; ki < n_k; ++ki)
      for (int t = 0; t < n_topo; ++t) eval_cell(ki, t);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int cell = next.fetch_add(1); cell < total_cells;
           cell = next.fetch_add(1))
        eval_cell(cell / n_topo, cell % n_topo);
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  result.k_values = scenario.k_values;
  for (const auto& s : scenario.schemes) result.scheme_names.push_back(s.name);
  result.cells.assign(n_schemes, std::vector<SweepCell>(n_k));
  for (int s = 0; s < n_schemes; ++s) {
    for (int ki = 0; ki < n_k; ++ki) {
      const auto& xs = samples[s][ki];
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= n_topo;
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      var = n_topo > 1 ? var / (n_topo - 1) : 0.0;
      result.cells[s][ki] = {mean, std::sqrt(var), n_topo};
    }
  }
  if (scenario.keep_samples) result.samples = std::move(samples);
  return result;
}

namespace {

SchemeConfig concurrent_scheme(std::string name, TxStrategy tx, RxStrategy rx,
                               bool adaptive, int fixed_mcs, double sigma_c2,
                               double backoff_db = 0.0) {
  SchemeConfig cfg;
  cfg.name = std::move(name);
  cfg.kind = SchemeKind::Concurrent;
  cfg.tx_strategy = tx;
  cfg.rx_strategy = rx;
  cfg.adaptive_mcs = adaptive;
  cfg.fixed_mcs = fixed_mcs;
  cfg.est_noise_var = sigma_c2;
  cfg.backoff_db = backoff_db;
  return cfg;
}

std::string trim_float(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::vector<Scenario> figure_scenarios(const SimParams& params,
                                       int n_topologies,
                                       std::uint64_t base_seed) {
  std::vector<int> k_sweep{1, 2, 3, 4, 5, 6, 7, 8};
  auto make = [&](std::string name) {
    Scenario s;
    s.name = std::move(name);
    s.k_values = k_sweep;
    s.n_topologies = n_topologies;
    s.base_seed = base_seed;
    s.params = params;
    return s;
  };

  // RX detector comparison, perfect CSI, fixed MCS.
  Scenario fig1 = make("fig1");
  for (int mcs : {0, 5}) {
    const std::string suffix = "-mcs" + std::to_string(mcs);
    fig1.schemes.push_back(concurrent_scheme(
        "zf" + suffix, TxStrategy::Beamnull, RxStrategy::Zf, false, mcs, 0.0));
    fig1.schemes.push_back(concurrent_scheme("mmse" + suffix,
                                             TxStrategy::Beamnull,
                                             RxStrategy::Mmse, false, mcs, 0.0));
    fig1.schemes.push_back(
        concurrent_scheme("ummse" + suffix, TxStrategy::Beamnull,
                          RxStrategy::UniversalMmse, false, mcs, 0.0));
  }

  // Channel-estimation-error levels, beamnull + ZF, fixed MCS.
  Scenario fig2 = make("fig2");
  for (int mcs : {0, 5}) {
    for (double factor : {0.0, 0.001, 0.01, 0.1, 0.5, 1.0}) {
      fig2.schemes.push_back(concurrent_scheme(
          "zf-mcs" + std::to_string(mcs) + "-est" + trim_float(factor),
          TxStrategy::Beamnull, RxStrategy::Zf, false, mcs,
          factor * params.noise_var_mw));
    }
  }

  // Link adaptation vs fixed MCS, perfect CSI, beamnull + ZF.
  Scenario fig3 = make("fig3");
  fig3.schemes.push_back(concurrent_scheme(
      "zf-mcs0", TxStrategy::Beamnull, RxStrategy::Zf, false, 0, 0.0));
  fig3.schemes.push_back(concurrent_scheme(
      "zf-mcs5", TxStrategy::Beamnull, RxStrategy::Zf, false, 5, 0.0));
  fig3.schemes.push_back(concurrent_scheme(
      "zf-adaptive", TxStrategy::Beamnull, RxStrategy::Zf, true, 0, 0.0));

  // TX beamforming benefit, perfect CSI.
  Scenario fig4 = make("fig4");
  struct Combo {
    const char* label;
    TxStrategy tx;
    RxStrategy rx;
  };
  for (const Combo& combo :
       {Combo{"null-zf", TxStrategy::Beamnull, RxStrategy::Zf},
        Combo{"null-mmse", TxStrategy::Beamnull, RxStrategy::Mmse},
        Combo{"bf-mmse", TxStrategy::Beamform, RxStrategy::Mmse}}) {
    fig4.schemes.push_back(concurrent_scheme(std::string(combo.label) + "-mcs0",
                                             combo.tx, combo.rx, false, 0, 0.0));
    fig4.schemes.push_back(concurrent_scheme(
        std::string(combo.label) + "-adaptive", combo.tx, combo.rx, true, 0, 0.0));
  }

  // Combined scheme matrix.
  Scenario fig5 = make("fig5");
  fig5.schemes = table2_configs(params);

  return {fig1, fig2, fig3, fig4, fig5};
}

void write_csv(const SweepResult& result, std::ostream& out) {
  struct Row {
    std::string scheme;
    int k;
    const SweepCell* cell;
  };
  std::vector<Row> rows;
  for (std::size_t s = 0; s < result.scheme_names.size(); ++s)
    for (std::size_t ki = 0; ki < result.k_values.size(); ++ki)
      rows.push_back(
          {result.scheme_names[s], result.k_values[ki], &result.cells[s][ki]});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.scheme != b.scheme ? a.scheme < b.scheme : a.k < b.k;
  });
  out << "scheme,k,mean_mbps,std_mbps,n\n";
  char buf[64];
  for (const Row& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", row.cell->mean_mbps,
                  row.cell->std_mbps);
    out << row.scheme << ',' << row.k << ',' << buf << ',' << row.cell->n
        << '\n';
  }
}

}  // namespace sdma
