#pragma once

#include <cmath>
#include <stdexcept>

#include "wecflow/core/quadrature.hpp"
#include "wecflow/core/rootfind.hpp"
#include "wecflow/spectrum/sea_state.hpp"

namespace wecflow::spectrum {

/// Two-parameter spectrum S(w) = A w^-5 exp(-B w^-4) with
///   B = (Gamma(5/4) / Te)^4,  A = B Hs^2 / 4,
/// which pins the moment identities 4 sqrt(m0) = Hs and m_{-1}/m0 = Te
/// (moments taken over angular frequency).
struct PmCoefficients {
  double a = 0.0;
  double b = 0.0;

  static PmCoefficients from(const SeaState& sea) {
    PmCoefficients c;
    const double gq = std::tgamma(1.25) / sea.te;
    c.b = gq * gq * gq * gq;
    c.a = c.b * sea.hs * sea.hs / 4.0;
    return c;
  }

  /// peak angular frequency (4B/5)^(1/4)
  double omega_peak() const { return std::pow(0.8 * b, 0.25); }
};

/// Spectral density [m^2 s]; S(0) = 0 by limit.
inline double pm_spectrum(double omega, const SeaState& sea) {
  if (omega < 0.0)
    throw std::domain_error("pm_spectrum: omega must be >= 0");
  if (omega == 0.0) return 0.0;
  const auto c = PmCoefficients::from(sea);
  const double w4 = omega * omega * omega * omega;
  return c.a / (w4 * omega) * std::exp(-c.b / w4);
}

namespace detail {

/// int_0^omega S, by adaptive quadrature (the integrand vanishes to double
/// zero well below the peak, so the left endpoint is unproblematic).
inline double pm_cumulative(double omega, const SeaState& sea) {
  if (omega <= 0.0) return 0.0;
  return GaussKronrod::integrate(
             [&](double w) { return pm_spectrum(w, sea); }, 0.0, omega, 1e-12)
      .value;
}

/// total m0, integrating far enough into the tail that the remainder is
/// below 1e-13 of the total
inline double pm_m0(const SeaState& sea) {
  const auto c = PmCoefficients::from(sea);
  const double omega_hi = std::pow(c.b / 1e-13, 0.25);
  return pm_cumulative(omega_hi, sea);
}

}  // namespace detail

/// Truncation interval (omega_L, omega_R) leaving neglect_fraction/2 of the
/// total energy in each tail, by monotone root solving on the cumulative
/// integral.
struct TruncationBounds {
  double omega_l = 0.0;
  double omega_r = 0.0;
  double m0 = 0.0;  // total zeroth moment, for downstream bookkeeping
};

inline TruncationBounds truncation_bounds(const SeaState& sea,
                                          double neglect_fraction) {
  if (!(neglect_fraction > 0.0 && neglect_fraction < 0.5))
    throw std::invalid_argument(
        "truncation_bounds: neglect_fraction must lie in (0, 0.5)");
  sea.validate();
  TruncationBounds out;
  out.m0 = detail::pm_m0(sea);
  const double peak = PmCoefficients::from(sea).omega_peak();
  const double tail = 0.5 * neglect_fraction * out.m0;

  auto cdf = [&](double w) { return detail::pm_cumulative(w, sea); };

  double lo = peak, hi = peak;
  while (cdf(lo) > tail) lo *= 0.5;
  out.omega_l = brent([&](double w) { return cdf(w) - tail; }, lo, peak);

  while (out.m0 - cdf(hi) > tail) hi *= 2.0;
  out.omega_r =
      brent([&](double w) { return (out.m0 - cdf(w)) - tail; }, peak, hi);
  return out;
}

}  // namespace wecflow::spectrum
