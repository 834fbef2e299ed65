#ifndef SDMA_SIM_PARAMS_HPP
#define SDMA_SIM_PARAMS_HPP

#include <cmath>

namespace sdma {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/// Physical-layer and deployment constants shared by every module.
/// Defaults: 4 antennas, 64-subcarrier OFDM over 20 MHz with 1/4 guard
/// interval, 25 dBm TX power, -113 dBm noise per subcarrier, simplified
/// path loss with exponent 3, nodes dropped in a 200 m x 200 m box.
struct SimParams {
  int n_antennas = 4;
  int n_subcarriers = 64;
  double bandwidth_hz = 20e6;
  double guard_fraction = 0.25;
  double tx_power_mw = 316.22776601683796;        // 25 dBm
  double noise_var_mw = 5.0118723362727145e-12;   // -113 dBm
  double pathloss_exponent = 3.0;
  double ref_distance_m = 1.0;
  double wavelength_m = 0.125;
  double area_x_m = 200.0;
  double area_y_m = 200.0;

  /// Throws std::invalid_argument if any field is outside its domain.
  void validate() const;

  /// Per-subcarrier TX power P_T / N_C for a full-power single stream.
  double subcarrier_power_mw() const { return tx_power_mw / n_subcarriers; }
};

}  // namespace sdma

#endif  // SDMA_SIM_PARAMS_HPP
