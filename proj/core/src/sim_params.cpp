#include "sdma/sim_params.hpp"

#include <stdexcept>

namespace sdma {

void SimParams::validate() const {
  if (n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
  if (n_subcarriers < 1)
    throw std::invalid_argument("n_subcarriers must be >= 1");
  if (!(bandwidth_hz > 0)) throw std::invalid_argument("bandwidth_hz must be > 0");
  if (!(guard_fraction >= 0 && guard_fraction < 1))
    throw std::invalid_argument("guard_fraction must be in [0, 1)");
  if (!(tx_power_mw > 0)) throw std::invalid_argument("tx_power_mw must be > 0");
  if (!(noise_var_mw > 0)) throw std::invalid_argument("noise_var_mw must be > 0");
  if (!(ref_distance_m > 0))
    throw std::invalid_argument("ref_distance_m must be > 0");
  if (!(wavelength_m > 0)) throw std::invalid_argument("wavelength_m must be > 0");
  if (!(area_x_m > 0 && area_y_m > 0))
    throw std::invalid_argument("deployment area sides must be > 0");
}

}  // namespace sdma
