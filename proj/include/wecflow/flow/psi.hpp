#pragma once

#include <Eigen/Cholesky>
#include <functional>
#include <stdexcept>

#include "wecflow/core/types.hpp"
#include "wecflow/flow/cg.hpp"
#include "wecflow/flow/problem.hpp"
#include "wecflow/flow/scaling.hpp"

namespace wecflow::flow {

struct PsiOptions {
  enum class Solver { CG, Direct };
  Solver solver = Solver::CG;
  double tau_cg = 1e-6;   // absolute tolerance on the Schur residual
  Index cg_max_iter = 500;
  /// Optional override: tolerance as a function of ||gbar|| at the current
  /// point (used by the adaptive-tolerance mode, which caps tau_cg by the
  /// current constraint norm).
  std::function<double(double)> tau_from_gnorm;
};

struct PsiResult {
  Vec psi;             // scaled flow direction Psi_bar
  Vec lambda;          // multiplier estimate of the Schur system
  double norm_psi = 0.0;
  double norm_g = 0.0;         // ||gbar||
  double norm_rhs = 0.0;       // ||gbar - Jbar grad_bar||
  double norm_jt_lambda = 0.0; // ||Jbar' lambda||
  double cg_residual = 0.0;
  Index cg_iterations = 0;
  bool cg_converged = true;
  double tau_used = 0.0;
};

/// Right-hand side of the flow ODE in scaled variables:
///
///   Psi_bar = -Jbar' [Jbar Jbar']^{-1} (gbar - Jbar grad_bar) - grad_bar,
///
/// with Jbar = S_g^{-1} J_g S_w and grad_bar = S_w grad f / f0. The Schur
/// system is solved with CG to an absolute residual tolerance, or with a
/// dense factorization (test/reference path, small problems only).
inline PsiResult compute_psi(const FlowProblem& problem, const Vec& wbar,
                             const Scalings& sc, const PsiOptions& opt = {}) {
  if (!wbar.allFinite())
    throw std::runtime_error("compute_psi: non-finite state");
  PsiResult out;
  const Vec w = sc.s_w.cwiseProduct(wbar);
  const Vec grad_bar = sc.s_w.cwiseProduct(problem.grad(w)) / sc.f0;

  if (problem.dim_g() == 0) {
    out.psi = -grad_bar;
    out.norm_psi = out.psi.norm();
    out.lambda = Vec(0);
    return out;
  }

  const Vec gbar = problem.constraint(w).cwiseQuotient(sc.s_g);
  out.norm_g = gbar.norm();

  auto jac = [&](const Vec& vbar) -> Vec {
    return problem.jac_apply(w, sc.s_w.cwiseProduct(vbar))
        .cwiseQuotient(sc.s_g);
  };
  auto jac_adj = [&](const Vec& p) -> Vec {
    return sc.s_w.cwiseProduct(
        problem.jac_adjoint_apply(w, p.cwiseQuotient(sc.s_g)));
  };
  auto schur = [&](const Vec& x) -> Vec { return jac(jac_adj(x)); };

  const Vec rhs = gbar - jac(grad_bar);
  out.norm_rhs = rhs.norm();

  if (opt.solver == PsiOptions::Solver::Direct) {
    const Index m = problem.dim_g();
    Mat sigma(m, m);
    Vec e = Vec::Zero(m);
    for (Index i = 0; i < m; ++i) {
      e[i] = 1.0;
      sigma.col(i) = schur(e);
      e[i] = 0.0;
    }
    out.lambda = Eigen::LDLT<Mat>(sigma).solve(rhs);
    out.cg_residual = (rhs - schur(out.lambda)).norm();
    out.cg_converged = true;
  } else {
    double tau = opt.tau_cg;
    if (opt.tau_from_gnorm) tau = opt.tau_from_gnorm(out.norm_g);
    out.tau_used = tau;
    CgResult cg = cg_solve(schur, rhs, tau, opt.cg_max_iter);
    out.lambda = std::move(cg.x);
    out.cg_residual = cg.residual_norm;
    out.cg_iterations = cg.iterations;
    out.cg_converged = cg.converged;
  }

  const Vec jt_lambda = jac_adj(out.lambda);
  out.norm_jt_lambda = jt_lambda.norm();
  out.psi = -jt_lambda - grad_bar;
  out.norm_psi = out.psi.norm();
  return out;
}

}  // namespace wecflow::flow
