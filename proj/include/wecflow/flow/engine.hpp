#pragma once

#include <chrono>
#include <cmath>
#include <utility>

#include "wecflow/core/types.hpp"
#include "wecflow/flow/problem.hpp"
#include "wecflow/flow/psi.hpp"
#include "wecflow/flow/scaling.hpp"
#include "wecflow/flow/stepper.hpp"
#include "wecflow/flow/tolerance.hpp"
#include "wecflow/flow/trace.hpp"

namespace wecflow::flow {

/// Solver presets: S1/S2 are fixed-step explicit Euler with a fixed CG
/// tolerance, S3 adds the embedded Euler/Heun error control with fixed
/// tolerances, S4 additionally adapts the CG and step-error tolerances.
enum class Mode { S1, S2, S3, S4 };

struct FlowSettings {
  Mode mode = Mode::S4;
  double dt0 = 1.0;
  double tau_psi = 1e-3;
  double t_max = 1000.0;

  double tau_cg = 1e-6;      // fixed-tolerance modes (S1, S2, S3)

  double tau_rk_rel = 1e-3;  // S3 componentwise error control
  double tau_rk_abs = 1e-6;

  double k_tau = 0.1;        // S4 adaptation gain
  double tau_rk0 = 1e-2;     // S4 initial step-error tolerance
  double tau_cg_floor = 1e-14;
  double tau_cg_fallback = 1e-6;

  Index cg_max_iter = 500;
  StepSafety safety{};
  Index max_halvings = 20;   // consecutive dt halvings tolerated on CG failure

  static FlowSettings preset(Mode m) {
    FlowSettings s;
    s.mode = m;
    switch (m) {
      case Mode::S1: s.dt0 = 1.0; break;
      case Mode::S2: s.dt0 = 1.5; break;
      case Mode::S3: s.dt0 = 1.0; break;
      case Mode::S4: s.dt0 = 1.0; break;
    }
    return s;
  }

  void validate() const {
    if (!(tau_psi > 0) || !(dt0 > 0))
      throw std::invalid_argument("FlowSettings: tau_psi and dt0 must be > 0");
    if (!(k_tau > 0.0 && k_tau < 1.0))
      throw std::invalid_argument("FlowSettings: k_tau must lie in (0, 1)");
  }
};

/// One attempted embedded step from w with k1 = Psi(w) already available.
/// Spends exactly one Psi evaluation (at the trial point, which the Euler
/// update then reuses as the next iterate).
template <class PsiFn>
std::pair<StepOutcome, PsiResult> rk12_advance(const Vec& w, const Vec& k1,
                                               double dt, PsiFn&& eval) {
  StepOutcome out;
  out.w_euler = w + dt * k1;
  PsiResult k2 = eval(out.w_euler);
  out.w_heun = w + (0.5 * dt) * (k1 + k2.psi);
  return {std::move(out), std::move(k2)};
}

/// Integrates dw/dt = Psi(w) in scaled variables until ||Psi|| <= tau_psi or
/// the fictitious-time budget runs out. w0 is given in physical variables;
/// row scales are re-equilibrated at every evaluation point (the trajectory
/// does not depend on them).
inline FlowTrace run_flow(const FlowProblem& problem, const Vec& w0,
                          const Scalings& scaling_in,
                          const FlowSettings& settings) {
  using clock = std::chrono::steady_clock;
  settings.validate();
  FlowTrace trace;
  Scalings sc = scaling_in;
  if (sc.s_w.size() == 0) sc = Scalings::identity(problem.dim_w(), problem.dim_g());
  sc.validate();

  Vec wbar = w0.cwiseQuotient(sc.s_w);
  ToleranceHistory hist;
  const CgTolerancePolicy cg_policy{settings.k_tau, settings.tau_cg_floor,
                                    settings.tau_cg_fallback};
  double tau_rk = settings.tau_rk0;
  double last_wall = 0.0;

  auto eval_psi = [&](const Vec& at) -> PsiResult {
    sc.s_g = equilibrate_rows(problem, sc.s_w.cwiseProduct(at), sc.s_w).s_g;
    PsiOptions opt;
    opt.cg_max_iter = settings.cg_max_iter;
    if (settings.mode == Mode::S4) {
      opt.tau_from_gnorm = [&](double gn) {
        return update_cg_tolerance(hist, gn, cg_policy);
      };
    } else {
      opt.tau_cg = settings.tau_cg;
    }
    const auto t0 = clock::now();
    PsiResult r = compute_psi(problem, at, sc, opt);
    last_wall = std::chrono::duration<double>(clock::now() - t0).count();
    trace.psi_calls += 1;
    trace.psi_wall_s += last_wall;
    trace.cg_total_iters += r.cg_iterations;
    return r;
  };

  auto record = [&](double t, double dt, const PsiResult& r) {
    TraceRecord rec;
    rec.t = t;
    rec.dt = dt;
    rec.norm_psi = r.norm_psi;
    rec.norm_g = r.norm_g;
    rec.cost = problem.cost(sc.s_w.cwiseProduct(wbar)) / sc.f0;
    rec.tau_cg = r.tau_used;
    rec.tau_rk = tau_rk;
    rec.cg_iters = r.cg_iterations;
    rec.wall_s = last_wall;
    trace.records.push_back(rec);
  };

  auto finish = [&](Termination why) {
    trace.termination = why;
    trace.w_final = sc.s_w.cwiseProduct(wbar);
    return trace;
  };

  PsiResult cur;
  try {
    cur = eval_psi(wbar);
  } catch (const std::runtime_error&) {
    trace.w_final = sc.s_w.cwiseProduct(wbar);
    trace.termination = Termination::NonFinite;
    return trace;
  }
  double t = 0.0;
  double dt = settings.dt0;
  Index halvings = 0;
  record(0.0, 0.0, cur);

  const bool euler_only =
      settings.mode == Mode::S1 || settings.mode == Mode::S2;

  while (true) {
    if (cur.norm_psi <= settings.tau_psi) return finish(Termination::Converged);
    if (t >= settings.t_max) return finish(Termination::TimeBudget);
    if (t + dt == t) return finish(Termination::StepCollapse);

    PsiResult k2;
    StepOutcome step;
    try {
      std::tie(step, k2) = rk12_advance(wbar, cur.psi, dt, eval_psi);
    } catch (const std::runtime_error&) {
      return finish(Termination::NonFinite);
    }

    if (!k2.cg_converged) {
      // inexact projection is not trustworthy; halve the step and retry
      trace.rejected_steps += 1;
      halvings += 1;
      if (halvings > settings.max_halvings)
        return finish(Termination::CgFailureCap);
      dt *= 0.5;
      continue;
    }
    halvings = 0;
    if (!k2.psi.allFinite() || !step.w_euler.allFinite())
      return finish(Termination::NonFinite);

    if (euler_only) {
      t += dt;
      wbar = std::move(step.w_euler);
      cur = std::move(k2);
      trace.accepted_steps += 1;
      record(t, dt, cur);
      dt = settings.dt0;  // fixed-step mode
      continue;
    }

    double eps;
    if (settings.mode == Mode::S3) {
      eps = rk_error_rms(wbar, step.w_euler, step.w_heun, settings.tau_rk_abs,
                         settings.tau_rk_rel);
    } else {
      eps = rk_error_euclidean(step.w_euler, step.w_heun, tau_rk);
    }
    const double dt_used = dt;
    dt = update_timestep(eps, dt, settings.safety);

    if (eps <= 1.0) {
      if (settings.mode == Mode::S4) {
        tau_rk = update_rk_tolerance(tau_rk, settings.k_tau, k2.norm_psi,
                                     (step.w_euler - wbar).norm(),
                                     (k2.psi - cur.psi).norm());
      }
      hist.valid = true;
      hist.norm_psi = k2.norm_psi;
      hist.norm_rhs = k2.norm_rhs;
      hist.norm_jt_lambda = k2.norm_jt_lambda;

      t += dt_used;
      wbar = std::move(step.w_euler);
      cur = std::move(k2);
      trace.accepted_steps += 1;
      record(t, dt_used, cur);
    } else {
      trace.rejected_steps += 1;
    }
  }
}

}  // namespace wecflow::flow
