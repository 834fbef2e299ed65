#ifndef SDMA_MAC_SCHEMES_HPP
#define SDMA_MAC_SCHEMES_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdma/link_metrics.hpp"
#include "sdma/rf_model.hpp"
#include "sdma/sim_params.hpp"

namespace sdma {

enum class TxStrategy { Beamnull, Beamform };
enum class RxStrategy { Zf, Mmse, UniversalMmse };
enum class SchemeKind { Concurrent, NonConcurrent };

/// One row of the scheme matrix: TX strategy x RX strategy x MCS policy
/// x estimation-noise variance x backoff. NonConcurrent ignores the
/// tx/rx strategy fields and runs the SVD multi-stream MAC instead.
struct SchemeConfig {
  std::string name;
  SchemeKind kind = SchemeKind::Concurrent;
  TxStrategy tx_strategy = TxStrategy::Beamnull;
  RxStrategy rx_strategy = RxStrategy::Zf;
  bool adaptive_mcs = false;
  int fixed_mcs = 0;             // used when adaptive_mcs is false
  double est_noise_var = 0.0;    // sigma_C^2, linear mW
  double backoff_db = 0.0;
};

/// Fixed TX/RX unit vectors per link and subcarrier, exposed so tests
/// can check norms and cross-link nulling residuals.
struct BeamSolution {
  // [link][subcarrier]
  std::vector<std::vector<Eigen::VectorXcd>> tx_vectors;
  std::vector<std::vector<Eigen::VectorXcd>> rx_vectors;
};

struct SchemeResult {
  std::vector<LinkOutcome> per_link;
  double sum_throughput_mbps = 0.0;
  BeamSolution beams;
};

/// Sequential-access concurrent MAC: each accessing link nulls its TX
/// toward the already-fixed RX vectors, then derives its RX vector with
/// the configured detector. The Universal-MMSE detector recomputes all
/// RX vectors once every TX vector is fixed. Estimation error enters
/// every TX/RX derivation; viability is always judged on true channels.
SchemeResult run_concurrent(const SchemeConfig& cfg, const ChannelSet& channels,
                            const Topology& topology, const SimParams& params,
                            const McsTable& table);

/// One-link-at-a-time SVD MAC with an adaptively chosen stream count;
/// network throughput is the time-sharing mean over the K links.
SchemeResult run_nonconcurrent(const SchemeConfig& cfg,
                               const ChannelSet& channels,
                               const Topology& topology,
                               const SimParams& params, const McsTable& table);

/// Dispatch on cfg.kind.
SchemeResult run_scheme(const SchemeConfig& cfg, const ChannelSet& channels,
                        const Topology& topology, const SimParams& params,
                        const McsTable& table);

/// The four compared MAC schemes: baseline (beamnull + ZF + fixed MCS 0),
/// enhanced (beamform + MMSE + adaptive), enhanced with Universal MMSE,
/// and the non-concurrent SVD MAC; all with sigma_C^2 = 0.1 sigma_N^2.
std::vector<SchemeConfig> table2_configs(const SimParams& params = SimParams{});

}  // namespace sdma

#endif  // SDMA_MAC_SCHEMES_HPP
