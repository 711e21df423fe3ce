#pragma once

#include <algorithm>
#include <cmath>

namespace wecflow::flow {

/// Per-accepted-iterate quantities feeding the adaptive tolerance rules.
/// Rejected attempts must not be written here: the update formulas are
/// indexed on accepted iterates only.
struct ToleranceHistory {
  bool valid = false;          // false until the first accepted evaluation
  double norm_psi = 0.0;       // ||Psi(w^{j-1})||
  double norm_rhs = 0.0;       // ||g(w^{j-1}) - J grad f(w^{j-1})||
  double norm_jt_lambda = 0.0; // ||J' Lambda^{j-1}||
};

struct CgTolerancePolicy {
  double k_tau = 0.1;
  double floor = 1e-14;   // absolute minimum, avoids a zero tolerance
  double fallback = 1e-6; // cap used before any history exists
};

/// tau_CG^j = k_tau * min( ||Psi^{j-1}|| ||g^{j-1} - J grad f^{j-1}|| /
///                         ||J' Lambda^{j-1}||,  ||g^j|| ).
/// The first argument estimates the accuracy demanded by the convergence
/// indicator; the second enforces the one-step constraint-descent bound,
/// which needs ||r|| below ||g||. With no history (first evaluation) or a
/// vanishing ||J' Lambda||, only the constraint-norm branch is used.
inline double update_cg_tolerance(const ToleranceHistory& h, double norm_g_now,
                                  const CgTolerancePolicy& p = {}) {
  double tau;
  if (!h.valid) {
    tau = std::min(p.k_tau * norm_g_now, p.fallback);
  } else if (h.norm_jt_lambda <= 1e-300) {
    tau = p.k_tau * norm_g_now;
  } else {
    const double accuracy = h.norm_psi * h.norm_rhs / h.norm_jt_lambda;
    tau = p.k_tau * std::min(accuracy, norm_g_now);
  }
  return std::max(tau, p.floor);
}

/// tau_RK^j = min( tau_RK^{j-1},
///                 k_tau ||Psi_j|| ||w_j - w_{j-1}|| / ||Psi_j - Psi_{j-1}|| ),
/// a non-increasing sequence; the quotient is a secant Lipschitz estimate of
/// Psi along the trajectory. Identical consecutive Psi values keep the
/// previous tolerance.
inline double update_rk_tolerance(double tau_prev, double k_tau,
                                  double norm_psi_now, double norm_dw,
                                  double norm_dpsi) {
  if (norm_dpsi <= 1e-300) return tau_prev;
  return std::min(tau_prev, k_tau * norm_psi_now * norm_dw / norm_dpsi);
}

}  // namespace wecflow::flow
