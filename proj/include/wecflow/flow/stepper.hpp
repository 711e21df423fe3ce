#pragma once

#include <algorithm>
#include <cmath>

#include "wecflow/core/types.hpp"

namespace wecflow::flow {

/// One embedded Euler/Heun update built from the stage values
/// k1 = Psi(w) and k2 = Psi(w + k1 dt). The Euler update coincides with the
/// stage-2 evaluation point, so a single new Psi evaluation is spent per
/// attempted step (first-same-as-last reuse).
struct StepOutcome {
  Vec w_euler;
  Vec w_heun;
};

inline StepOutcome rk12_combine(const Vec& w, const Vec& k1, const Vec& k2,
                                double dt) {
  StepOutcome out;
  out.w_euler = w + dt * k1;
  out.w_heun = w + (0.5 * dt) * (k1 + k2);
  return out;
}

/// Normalized RMS error of the embedded pair with componentwise tolerances
/// sigma_l = tau_abs + max(|w_l|, |w_euler_l|) tau_rel.
inline double rk_error_rms(const Vec& w_old, const Vec& w_euler,
                           const Vec& w_heun, double tau_abs, double tau_rel) {
  const Index n = w_old.size();
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double sigma =
        tau_abs + std::max(std::abs(w_old[i]), std::abs(w_euler[i])) * tau_rel;
    const double e = (w_euler[i] - w_heun[i]) / sigma;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

/// Euclidean error of the embedded pair against a single tolerance; used by
/// the adaptive-tolerance mode, where tau_rk tracks the convergence indicator.
inline double rk_error_euclidean(const Vec& w_euler, const Vec& w_heun,
                                 double tau_rk) {
  return (w_euler - w_heun).norm() / tau_rk;
}

struct StepSafety {
  double fac = 0.9;
  double fac_min = 0.2;
  double fac_max = 2.0;
};

/// dt update from the local error estimate, r = 2 for the Euler pair:
/// dt_new = dt * clamp(fac * (1/eps)^(1/2), fac_min, fac_max).
/// The step itself is accepted iff eps <= 1.
inline double update_timestep(double eps, double dt, const StepSafety& s = {}) {
  double factor;
  if (eps > 0.0) {
    factor = std::clamp(s.fac * std::sqrt(1.0 / eps), s.fac_min, s.fac_max);
  } else {
    factor = s.fac_max;
  }
  return dt * factor;
}

}  // namespace wecflow::flow
