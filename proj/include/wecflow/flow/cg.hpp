#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "wecflow/core/types.hpp"

namespace wecflow::flow {

struct CgResult {
  Vec x;
  double residual_norm = 0.0;
  Index iterations = 0;
  bool converged = false;
};

/// Conjugate gradient for a self-adjoint positive (semi)definite operator,
/// zero initial guess, absolute tolerance on the 2-norm of the residual.
template <class Op>
CgResult cg_solve(Op&& apply, const Vec& rhs, double tau_abs, Index max_iter) {
  CgResult out;
  const Index n = rhs.size();
  out.x = Vec::Zero(n);
  Vec r = rhs;
  double rr = r.squaredNorm();
  out.residual_norm = std::sqrt(rr);
  if (out.residual_norm <= tau_abs) {
    out.converged = true;
    return out;
  }
  Vec p = r;
  Vec ap(n);
  for (Index it = 0; it < max_iter; ++it) {
    ap = apply(p);
    const double pap = p.dot(ap);
    if (!std::isfinite(pap))
      throw std::runtime_error("cg_solve: non-finite curvature encountered");
    if (pap <= 0.0) {
      // numerically null direction: stop with the current iterate
      break;
    }
    const double alpha = rr / pap;
    out.x += alpha * p;
    r -= alpha * ap;
    const double rr_new = r.squaredNorm();
    if (!std::isfinite(rr_new))
      throw std::runtime_error("cg_solve: non-finite residual encountered");
    out.iterations = it + 1;
    out.residual_norm = std::sqrt(rr_new);
    if (out.residual_norm <= tau_abs) {
      out.converged = true;
      return out;
    }
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  return out;
}

}  // namespace wecflow::flow
