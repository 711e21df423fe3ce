#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace wecflow {

/// Cylinder-function evaluations for integer orders, including negative ones.
/// Backed by the C++17 special math functions; the reflection identities
///   J_{-n} = (-1)^n J_n,  Y_{-n} = (-1)^n Y_n,  I_{-n} = I_n,  K_{-n} = K_n
/// extend them to negative order. Arguments must be strictly positive.
namespace bessel {

inline void check_arg(double x, const char* fn) {
  if (!(x > 0.0))
    throw std::domain_error(std::string(fn) + ": argument must be positive");
}

inline double J(int n, double x) {
  check_arg(x, "bessel::J");
  const double v = std::cyl_bessel_j(static_cast<double>(std::abs(n)), x);
  return (n < 0 && (n & 1)) ? -v : v;
}

inline double Y(int n, double x) {
  check_arg(x, "bessel::Y");
  const double v = std::cyl_neumann(static_cast<double>(std::abs(n)), x);
  return (n < 0 && (n & 1)) ? -v : v;
}

inline double I(int n, double x) {
  check_arg(x, "bessel::I");
  return std::cyl_bessel_i(static_cast<double>(std::abs(n)), x);
}

inline double K(int n, double x) {
  check_arg(x, "bessel::K");
  // exp overflow guard: K_n underflows to 0 well before x reaches here
  if (x > 700.0) return 0.0;
  return std::cyl_bessel_k(static_cast<double>(std::abs(n)), x);
}

/// Hankel function of the first kind, H1_n = J_n + i Y_n.
inline std::complex<double> H1(int n, double x) {
  return {J(n, x), Y(n, x)};
}

/// d/dx H1_n(x) = (H1_{n-1}(x) - H1_{n+1}(x)) / 2
inline std::complex<double> dH1(int n, double x) {
  return 0.5 * (H1(n - 1, x) - H1(n + 1, x));
}

/// d/dx K_n(x) = -(K_{n-1}(x) + K_{n+1}(x)) / 2
inline double dK(int n, double x) {
  return -0.5 * (K(n - 1, x) + K(n + 1, x));
}

}  // namespace bessel

/// Dispatch by function family; mirrors the four kinds used by the
/// basis-transformation matrices.
enum class BesselKind { J, H1, I, K };

inline std::complex<double> bessel_eval(BesselKind kind, int n, double x) {
  switch (kind) {
    case BesselKind::J:  return {bessel::J(n, x), 0.0};
    case BesselKind::H1: return bessel::H1(n, x);
    case BesselKind::I:  return {bessel::I(n, x), 0.0};
    case BesselKind::K:  return {bessel::K(n, x), 0.0};
  }
  throw std::logic_error("bessel_eval: bad kind");
}

}  // namespace wecflow
