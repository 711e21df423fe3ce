#pragma once

#include <stdexcept>

namespace wecflow::spectrum {

/// Sea-state description: the two spectrum parameters plus environment data
/// shared by the hydrodynamic model.
struct SeaState {
  double hs = 2.0;      // significant wave height [m]
  double te = 8.0;      // energy period (m_{-1}/m_0 of the spectrum) [s]
  double beta = 0.0;    // wave direction [rad]
  double depth = 30.0;  // uniform sea depth [m]
  double rho = 1025.0;  // water density [kg/m^3]
  double g = 9.81;      // gravity [m/s^2]

  void validate() const {
    if (!(hs > 0) || !(te > 0) || !(depth > 0) || !(rho > 0) || !(g > 0))
      throw std::invalid_argument("SeaState: Hs, Te, depth, rho, g must be > 0");
  }
};

}  // namespace wecflow::spectrum
