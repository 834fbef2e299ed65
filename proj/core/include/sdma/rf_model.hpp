#ifndef SDMA_RF_MODEL_HPP
#define SDMA_RF_MODEL_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "sdma/random.hpp"
#include "sdma/sim_params.hpp"

namespace sdma {

/// A random single-hop deployment of K directed TX->RX pairs.
/// Channel-access order is the generation order (contention is not
/// modeled), stored explicitly so callers can permute it if needed.
struct Topology {
  struct Link {
    Eigen::Vector2d tx_position;
    Eigen::Vector2d rx_position;
  };
  std::vector<Link> links;
  std::vector<int> access_order;  // permutation of 0..K-1

  int size() const { return static_cast<int>(links.size()); }
};

/// Flat-per-subcarrier Rayleigh channels for every directed (RX link,
/// TX link) pair, path-loss gains, and the estimation-noise model.
/// Channels are frozen for the whole topology evaluation.
struct ChannelSet {
  int n_links = 0;
  int n_antennas = 0;
  int n_subcarriers = 0;
  // channel(rx, tx, i): H from the TX node of link `tx` to the RX node
  // of link `rx` at subcarrier i. Stored row-major over (rx, tx, i).
  std::vector<Eigen::MatrixXcd> true_channels;
  std::vector<double> pathloss_gains;  // [rx * n_links + tx]
  double est_noise_var = 0.0;          // sigma_C^2, linear mW
  std::uint64_t noise_seed = 0;        // base seed for estimation-noise draws

  const Eigen::MatrixXcd& channel(int rx, int tx, int subcarrier) const {
    return true_channels[(static_cast<std::size_t>(rx) * n_links + tx) *
                             n_subcarriers +
                         subcarrier];
  }
  double gain(int rx, int tx) const {
    return pathloss_gains[static_cast<std::size_t>(rx) * n_links + tx];
  }
};

/// Drops 2k nodes i.i.d. uniform over the deployment rectangle.
/// Throws std::invalid_argument for k < 1.
Topology generate_topology(int k, const SimParams& params, Rng& rng);

/// Simplified path loss G = (lambda / (4 pi d0))^2 * (d0 / d)^exponent.
/// Distances below d0 are clamped to d0. Throws for d <= 0.
double path_loss(double distance_m, const SimParams& params);

/// Draws all K^2 directed-pair channel stacks (i.i.d. CN(0,1) entries)
/// plus path-loss gains, and seeds the estimation-noise source.
ChannelSet generate_channels(const Topology& topology, const SimParams& params,
                             double sigma_c2, Rng& rng);

/// Noisy estimate of an effective RX-side channel: h + sqrt(sigma_C^2) z.
Eigen::VectorXcd noisy_effective_channel(const Eigen::VectorXcd& h_rec,
                                         double sigma_c2, Rng& rng);

/// Noisy estimate of a TX-side interference column; same perturbation
/// model, drawn independently (separate estimation at a separate node).
Eigen::VectorXcd noisy_intf_column(const Eigen::VectorXcd& column,
                                   double sigma_c2, Rng& rng);

}  // namespace sdma

#endif  // SDMA_RF_MODEL_HPP
