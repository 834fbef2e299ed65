#ifndef SDMA_SIM_HARNESS_HPP
#define SDMA_SIM_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdma/mac_schemes.hpp"

namespace sdma {

/// A named sweep: schemes x K values, n_topologies seeded realizations
/// per cell, all schemes sharing each realization (paired comparison).
struct Scenario {
  std::string name;
  std::vector<SchemeConfig> schemes;
  std::vector<int> k_values;
  int n_topologies = 1000;
  std::uint64_t base_seed = 1;
  SimParams params;
  McsTable mcs_table = McsTable::default_table();
  bool keep_samples = false;  // retain per-topology sums in the result
};

struct SweepCell {
  double mean_mbps = 0.0;
  double std_mbps = 0.0;  // sample standard deviation
  int n = 0;
};

struct SweepResult {
  std::vector<std::string> scheme_names;
  std::vector<int> k_values;
  // cells[scheme][k_index]
  std::vector<std::vector<SweepCell>> cells;
  // samples[scheme][k_index][t], filled when Scenario::keep_samples
  std::vector<std::vector<std::vector<double>>> samples;

  const SweepCell& cell(int scheme, int k_index) const {
    return cells[scheme][k_index];
  }
};

/// Deterministic seed for the (K, topology-index) grid cell.
std::uint64_t topology_seed(std::uint64_t base_seed, int k, int topology_index);

/// Runs the whole sweep. Every scheme in the scenario sees the same
/// channel realization per (K, t) cell. n_threads <= 1 runs serially;
/// the aggregation is identical either way.
SweepResult run_scenario(const Scenario& scenario, int n_threads = 0);

/// The five standard sweeps: RX detector comparison, estimation-error
/// levels, link adaptation, TX beamforming, and the combined scheme
/// matrix. K sweeps 1..8.
std::vector<Scenario> figure_scenarios(const SimParams& params = SimParams{},
                                       int n_topologies = 1000,
                                       std::uint64_t base_seed = 1);

/// CSV rows `scheme,k,mean_mbps,std_mbps,n`, sorted by (scheme, k).
void write_csv(const SweepResult& result, std::ostream& out);

}  // namespace sdma

#endif  // SDMA_SIM_HARNESS_HPP
