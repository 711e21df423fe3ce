#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace wecflow {

/// Adaptive Gauss-Kronrod (G7/K15) quadrature on a finite interval.
/// Bisects intervals whose embedded error estimate exceeds the local share
/// of the requested tolerance.
class GaussKronrod {
 public:
  struct Result {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
  };

  template <class F>
  static Result integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                          double abs_tol = 1e-300, int max_depth = 48) {
    Result r;
    integrate_rec(f, a, b, rel_tol, abs_tol, max_depth, r);
    return r;
  }

 private:
  // K15 nodes (positive half) and weights; G7 weights on the shared nodes.
  static constexpr std::array<double, 8> kXgk = {
      0.991455371120813, 0.949107912342759, 0.864864423359769,
      0.741531185599394, 0.586087235467691, 0.405845151377397,
      0.207784955007898, 0.000000000000000};
  static constexpr std::array<double, 8> kWgk = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715525, 0.169004726639267, 0.190350578064785,
      0.204432940075298, 0.209482141084728};
  static constexpr std::array<double, 4> kWg = {
      0.129484966168870, 0.279705391489277, 0.381830050505119,
      0.417959183673469};

  template <class F>
  static void panel(F&& f, double a, double b, double& k15, double& err,
                    int& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double x = kXgk[i] * h;
      double fv;
      if (i == 7) {
        fv = f(c);
        evals += 1;
      } else {
        fv = f(c - x) + f(c + x);
        evals += 2;
      }
      resk += kWgk[i] * fv;
      if (i % 2 == 1) resg += kWg[i / 2] * fv;
    }
    k15 = resk * h;
    err = std::abs((resk - resg) * h);
  }

  template <class F>
  static void integrate_rec(F&& f, double a, double b, double rel_tol,
                            double abs_tol, int depth, Result& out) {
    double k15, err;
    panel(f, a, b, k15, err, out.evaluations);
    const double tol = std::max(abs_tol, rel_tol * std::abs(k15));
    if (err <= tol || depth <= 0 || b - a < 1e-15 * std::abs(a + b)) {
      out.value += k15;
      out.error += err;
      return;
    }
    const double c = 0.5 * (a + b);
    integrate_rec(f, a, c, rel_tol, abs_tol, depth - 1, out);
    integrate_rec(f, c, b, rel_tol, abs_tol, depth - 1, out);
  }
};

}  // namespace wecflow
