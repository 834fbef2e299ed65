#include "sdma/rf_model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sdma {

Topology generate_topology(int k, const SimParams& params, Rng& rng) {
  if (k < 1) throw std::invalid_argument("generate_topology: k must be >= 1");
  params.validate();
  Topology topo;
  topo.links.reserve(k);
  for (int q = 0; q < k; ++q) {
    Topology::Link link;
    link.tx_position = {rng.uniform(0.0, params.area_x_m),
                        rng.uniform(0.0, params.area_y_m)};
    link.rx_position = {rng.uniform(0.0, params.area_x_m),
                        rng.uniform(0.0, params.area_y_m)};
    topo.links.push_back(link);
  }
  topo.access_order.resize(k);
  std::iota(topo.access_order.begin(), topo.access_order.end(), 0);
  return topo;
}

double path_loss(double distance_m, const SimParams& params) {
  if (!(distance_m > 0))
    throw std::invalid_argument("path_loss: distance must be > 0");
  const double d0 = params.ref_distance_m;
  const double d = std::max(distance_m, d0);
  const double ref = params.wavelength_m / (4.0 * M_PI * d0);
  return ref * ref * std::pow(d0 / d, params.pathloss_exponent);
}

ChannelSet generate_channels(const Topology& topology, const SimParams& params,
                             double sigma_c2, Rng& rng) {
  if (sigma_c2 < 0)
    throw std::invalid_argument("generate_channels: sigma_c2 must be >= 0");
  const int k = topology.size();
  ChannelSet cs;
  cs.n_links = k;
  cs.n_antennas = params.n_antennas;
  cs.n_subcarriers = params.n_subcarriers;
  cs.est_noise_var = sigma_c2;
  cs.pathloss_gains.resize(static_cast<std::size_t>(k) * k);
  cs.true_channels.reserve(static_cast<std::size_t>(k) * k *
                           params.n_subcarriers);
  for (int rx = 0; rx < k; ++rx) {
    for (int tx = 0; tx < k; ++tx) {
      const double dist = (topology.links[rx].rx_position -
                           topology.links[tx].tx_position)
                              .norm();
      cs.pathloss_gains[static_cast<std::size_t>(rx) * k + tx] =
          path_loss(std::max(dist, params.ref_distance_m), params);
      for (int i = 0; i < params.n_subcarriers; ++i)
        cs.true_channels.push_back(
            rng.cgaussian_matrix(params.n_antennas, params.n_antennas));
    }
  }
  cs.noise_seed = rng.next_u64();
  return cs;
}

Eigen::VectorXcd noisy_effective_channel(const Eigen::VectorXcd& h_rec,
                                         double sigma_c2, Rng& rng) {
  if (sigma_c2 < 0)
    throw std::invalid_argument("noisy_effective_channel: sigma_c2 < 0");
  if (sigma_c2 == 0.0) return h_rec;
  return h_rec + std::sqrt(sigma_c2) * rng.cgaussian_vector(h_rec.size());
}

Eigen::VectorXcd noisy_intf_column(const Eigen::VectorXcd& column,
                                   double sigma_c2, Rng& rng) {
  if (sigma_c2 < 0)
    throw std::invalid_argument("noisy_intf_column: sigma_c2 < 0");
  if (sigma_c2 == 0.0) return column;
  return column + std::sqrt(sigma_c2) * rng.cgaussian_vector(column.size());
}

}  // namespace sdma
