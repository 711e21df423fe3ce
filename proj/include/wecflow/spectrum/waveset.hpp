#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wecflow/core/quadrature.hpp"
#include "wecflow/spectrum/dispersion.hpp"
#include "wecflow/spectrum/pm.hpp"
#include "wecflow/spectrum/sea_state.hpp"

namespace wecflow::spectrum {

/// Discretized sea state: one regular wave per spectral bin, with progressive
/// and evanescent wavenumbers attached.
struct WaveComponent {
  double omega = 0.0;            // [rad/s]
  double height = 0.0;           // H_q [m]
  double k = 0.0;                // progressive wavenumber [1/m]
  std::vector<double> k_evan;    // evanescent wavenumbers, increasing
};

struct WaveSet {
  std::vector<WaveComponent> components;
  int n_evanescent = 0;

  int n_freq() const { return static_cast<int>(components.size()); }
};

/// Equal-width-bin discretization of the truncated spectrum. Each bin
/// contributes a component at its center whose height carries the bin energy:
/// E_q = rho g H_q^2 / 8 = rho g int_{I_q} S.
inline WaveSet discretize(const SeaState& sea, int n_freq, int n_evanescent,
                          double neglect_fraction = 0.02) {
  if (n_freq < 1) throw std::invalid_argument("discretize: n_freq must be >= 1");
  const TruncationBounds tb = truncation_bounds(sea, neglect_fraction);
  const double width = (tb.omega_r - tb.omega_l) / n_freq;
  WaveSet out;
  out.n_evanescent = n_evanescent;
  out.components.resize(n_freq);
  for (int q = 0; q < n_freq; ++q) {
    WaveComponent& c = out.components[q];
    const double a = tb.omega_l + q * width;
    const double b = a + width;
    c.omega = 0.5 * (a + b);
    const double energy =
        GaussKronrod::integrate(
            [&](double w) { return pm_spectrum(w, sea); }, a, b, 1e-12)
            .value;
    c.height = std::sqrt(8.0 * std::max(energy, 0.0));
    c.k = progressive_wavenumber(c.omega, sea.depth, sea.g);
    c.k_evan = evanescent_wavenumbers(c.omega, sea.depth, sea.g, n_evanescent);
  }
  return out;
}

/// Plain-text cache format: versioned header, one row per component with
/// columns omega, H, k, k_1 .. k_Nm.
inline void save_waveset(const WaveSet& ws, std::ostream& os) {
  os << "wecflow-waves v1\n";
  os << ws.n_freq() << ' ' << ws.n_evanescent << "\n";
  os << std::setprecision(17) << std::scientific;
  for (const auto& c : ws.components) {
    os << c.omega << ' ' << c.height << ' ' << c.k;
    for (double km : c.k_evan) os << ' ' << km;
    os << "\n";
  }
}

inline void save_waveset(const WaveSet& ws, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_waveset: cannot open " + path);
  save_waveset(ws, f);
}

inline WaveSet load_waveset(std::istream& is) {
  std::string header;
  std::getline(is, header);
  if (header != "wecflow-waves v1")
    throw std::runtime_error("load_waveset: unrecognized header '" + header + "'");
  int nf = 0, nm = 0;
  is >> nf >> nm;
  if (!is || nf < 1 || nm < 0)
    throw std::runtime_error("load_waveset: bad dimensions");
  WaveSet out;
  out.n_evanescent = nm;
  out.components.resize(nf);
  for (auto& c : out.components) {
    is >> c.omega >> c.height >> c.k;
    c.k_evan.resize(nm);
    for (auto& km : c.k_evan) is >> km;
    if (!is) throw std::runtime_error("load_waveset: truncated file");
  }
  return out;
}

inline WaveSet load_waveset(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_waveset: cannot open " + path);
  return load_waveset(f);
}

}  // namespace wecflow::spectrum
