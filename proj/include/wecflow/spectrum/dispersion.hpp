#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wecflow/core/rootfind.hpp"

namespace wecflow::spectrum {

/// Positive root of the dispersion relation w^2 = g k tanh(k D).
/// Since tanh <= 1 the root lies in [k0, k0/tanh(k0 D)] with the deep-water
/// seed k0 = w^2/g; a safeguarded Newton iteration in that bracket converges
/// to machine accuracy.
inline double progressive_wavenumber(double omega, double depth, double g) {
  if (!(omega > 0.0) || !(depth > 0.0) || !(g > 0.0))
    throw std::domain_error("progressive_wavenumber: omega, D, g must be > 0");
  const double w2 = omega * omega;
  const double k0 = w2 / g;
  const double lo = k0 * (1.0 - 1e-12);
  const double hi = k0 / std::tanh(k0 * depth) * (1.0 + 1e-12);
  auto fdf = [&](double k) {
    const double th = std::tanh(k * depth);
    const double f = g * k * th - w2;
    const double sech2 = 1.0 - th * th;
    const double df = g * (th + k * depth * sech2);
    return std::pair<double, double>{f, df};
  };
  return safeguarded_newton(fdf, k0, lo, hi, 1e-15);
}

/// First n_evanescent roots of w^2 = -g k tan(k D); the m-th root has
/// k D in ((2m-1) pi/2, m pi). Solved on the pole-free form
///   x sin(x) + (w^2 D / g) cos(x) = 0,  x = k D.
inline std::vector<double> evanescent_wavenumbers(double omega, double depth,
                                                  double g, int n_evanescent) {
  if (!(omega > 0.0) || !(depth > 0.0) || !(g > 0.0))
    throw std::domain_error("evanescent_wavenumbers: omega, D, g must be > 0");
  if (n_evanescent < 0)
    throw std::invalid_argument("evanescent_wavenumbers: count must be >= 0");
  const double c = omega * omega * depth / g;
  auto h = [&](double x) { return x * std::sin(x) + c * std::cos(x); };
  std::vector<double> roots;
  roots.reserve(n_evanescent);
  const double pi = std::acos(-1.0);
  for (int m = 1; m <= n_evanescent; ++m) {
    const double lo = (2.0 * m - 1.0) * 0.5 * pi * (1.0 + 1e-14);
    const double hi = m * pi;
    if (h(lo) * h(hi) > 0.0)
      throw std::runtime_error("evanescent_wavenumbers: bracket failure");
    const double x = brent(h, lo, hi, 1e-15 * hi);
    roots.push_back(x / depth);
  }
  return roots;
}

}  // namespace wecflow::spectrum
