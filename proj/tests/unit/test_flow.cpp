#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "support/toy_problems.hpp"
#include "wecflow/flow/cg.hpp"
#include "wecflow/flow/engine.hpp"
#include "wecflow/flow/psi.hpp"
#include "wecflow/flow/slack.hpp"
#include "wecflow/flow/stepper.hpp"
#include "wecflow/flow/tolerance.hpp"

using namespace wecflow;
using namespace wecflow::flow;
using namespace wecflow::testing;
using Catch::Approx;

TEST_CASE("init_slacks") {
  Vec h(3);
  h << -4.0, 0.0, 3.0;
  const Vec s = init_slacks(h);
  CHECK(s[0] == Approx(2.0));
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 0.0);  // violated row: repaired by the flow
  const Vec gi = augmented_constraint(h, s);
  CHECK(gi[0] == 0.0);
  CHECK(gi[1] == 0.0);
  CHECK(gi[2] == Approx(3.0));
}

TEST_CASE("augmented_constraint") {
  Vec h(3), s(3);
  h << -1.0, 2.0, -1.0;
  s << 1.0, 0.0, 2.0;
  const Vec g = augmented_constraint(h, s);
  CHECK(g[0] == Approx(0.0).margin(0));
  CHECK(g[1] == Approx(2.0));
  CHECK(g[2] == Approx(3.0));
  Vec s_bad(2);
  CHECK_THROWS_AS(augmented_constraint(h, s_bad), std::invalid_argument);
}

TEST_CASE("cg_solve identity converges in one iteration") {
  Vec rhs(4);
  rhs << 1.0, -2.0, 3.0, 0.5;
  auto r = cg_solve([](const Vec& v) { return v; }, rhs, 1e-12, 50);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK((r.x - rhs).norm() < 1e-14);
}

TEST_CASE("cg_solve diagonal analytic") {
  Vec rhs(2);
  rhs << 1.0, 2.0;
  Vec d(2);
  d << 1.0, 2.0;
  auto r = cg_solve([&](const Vec& v) { return d.cwiseProduct(v).eval(); },
                    rhs, 1e-13, 50);
  CHECK(r.converged);
  CHECK(r.x[0] == Approx(1.0));
  CHECK(r.x[1] == Approx(1.0));
}

TEST_CASE("cg_solve random SPD matches dense factorization") {
  SplitMix64 rng(7);
  const Index n = 10;
  Mat b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
  const Mat a = b * b.transpose() + 0.5 * Mat::Identity(n, n);
  const Vec rhs = random_vec(rng, n);
  auto r = cg_solve([&](const Vec& v) { return (a * v).eval(); }, rhs, 1e-12,
                    200);
  const Vec x_ref = a.ldlt().solve(rhs);
  CHECK(r.converged);
  CHECK((r.x - x_ref).norm() < 1e-10);
}

namespace {

// g(w) = [w_1 + 2 w_2 + 2 w_3 - 1 (eq); rows for equilibration checks]
class RowProblem final : public FlowProblem {
 public:
  Index dim_w() const override { return 3; }
  Index dim_g() const override { return 3; }
  Index num_inequalities() const override { return 2; }
  double cost(const Vec&) const override { return 0.0; }
  Vec grad(const Vec& w) const override { return Vec::Zero(3); }
  Vec constraint(const Vec& w) const override { return jac() * w; }
  Vec jac_apply(const Vec&, const Vec& v) const override { return jac() * v; }
  Vec jac_adjoint_apply(const Vec&, const Vec& p) const override {
    return jac().transpose() * p;
  }
  Vec row_scale_hint(const Vec&, const Vec& s_w) const override {
    Vec out(2);
    out[0] = (jac().row(1).transpose().cwiseProduct(s_w)).norm();
    out[1] = (jac().row(2).transpose().cwiseProduct(s_w)).norm();
    return out;
  }
  static Mat jac() {
    Mat j(3, 3);
    j << 1.0, 0.0, 1.0,   // state row, left unscaled
         3.0, 4.0, 0.0,   // inequality row, norm 5
         0.0, 0.0, 0.0;   // degenerate inequality row
    return j;
  }
};

}  // namespace

TEST_CASE("equilibrate_rows norms and degenerate rows") {
  RowProblem pb;
  const Vec w = Vec::Zero(3);
  const Vec s_w = Vec::Ones(3);
  auto eq = equilibrate_rows(pb, w, s_w);
  CHECK(eq.s_g[0] == 1.0);             // state row untouched
  CHECK(eq.s_g[1] == Approx(5.0));     // (3,4,0) -> 5
  CHECK(eq.s_g[2] == 1.0);             // zero row kept at 1
  CHECK(eq.degenerate_rows == 1);

  // scaled row has unit norm
  const Mat j = RowProblem::jac();
  CHECK((j.row(1) / eq.s_g[1]).norm() == Approx(1.0));
}

TEST_CASE("equilibrated Schur operator has unit diagonal on inequality rows") {
  MixedQP inner;
  SlackAugmented pb(inner);
  SplitMix64 rng(3);
  const Vec w = random_vec(rng, pb.dim_w(), 0.2, 1.5);
  const Vec s_w = Vec::Ones(pb.dim_w());
  auto eq = equilibrate_rows(pb, w, s_w);
  auto schur = [&](const Vec& x) {
    return pb.jac_apply(w, pb.jac_adjoint_apply(w, x.cwiseQuotient(eq.s_g)))
        .cwiseQuotient(eq.s_g)
        .eval();
  };
  const Mat sigma = dense_of(schur, pb.dim_g());
  const Index off = pb.dim_g() - pb.num_inequalities();
  for (Index i = off; i < pb.dim_g(); ++i)
    CHECK(sigma(i, i) == Approx(1.0).epsilon(1e-12));
}

namespace {

class UnconstrainedQuadratic final : public FlowProblem {
 public:
  Index dim_w() const override { return 4; }
  Index dim_g() const override { return 0; }
  double cost(const Vec& w) const override { return 0.5 * w.squaredNorm(); }
  Vec grad(const Vec& w) const override { return w; }
  Vec constraint(const Vec&) const override { return Vec(0); }
  Vec jac_apply(const Vec&, const Vec&) const override { return Vec(0); }
  Vec jac_adjoint_apply(const Vec&, const Vec&) const override {
    return Vec::Zero(4);
  }
};

class PinFirstCoordinate final : public FlowProblem {
 public:
  explicit PinFirstCoordinate(Index n) : n_(n) {}
  Index dim_w() const override { return n_; }
  Index dim_g() const override { return 1; }
  double cost(const Vec& w) const override { return 0.5 * w.squaredNorm(); }
  Vec grad(const Vec& w) const override { return w; }
  Vec constraint(const Vec& w) const override {
    Vec g(1);
    g[0] = w[0] - 1.0;
    return g;
  }
  Vec jac_apply(const Vec&, const Vec& v) const override {
    Vec g(1);
    g[0] = v[0];
    return g;
  }
  Vec jac_adjoint_apply(const Vec&, const Vec& p) const override {
    Vec out = Vec::Zero(n_);
    out[0] = p[0];
    return out;
  }

 private:
  Index n_;
};

}  // namespace

TEST_CASE("compute_psi without constraints is the negative gradient") {
  UnconstrainedQuadratic pb;
  SplitMix64 rng(11);
  const Vec w = random_vec(rng, 4);
  auto r = compute_psi(pb, w, Scalings::identity(4, 0));
  CHECK((r.psi + w).norm() < 1e-15);
}

TEST_CASE("compute_psi rank-1 projection closed form") {
  PinFirstCoordinate pb(5);
  SplitMix64 rng(12);
  const Vec w = random_vec(rng, 5, -2.0, 2.0);
  PsiOptions opt;
  opt.tau_cg = 1e-14;
  auto r = compute_psi(pb, w, Scalings::identity(5, 1), opt);
  // Psi = -(w1 - 1) e1 - (w - w1 e1)
  Vec expect = -w;
  expect[0] = 1.0 - w[0];
  CHECK((r.psi - expect).norm() < 1e-12);
}

TEST_CASE("compute_psi vanishes at a KKT point") {
  SphereLinear inner;
  SlackAugmented pb(inner);
  Vec w(2);
  w << -1.0, 0.0;
  PsiOptions opt;
  opt.tau_cg = 1e-12;
  auto r = compute_psi(pb, w, Scalings::identity(2, 1), opt);
  CHECK(r.norm_psi < 1e-8);
}

TEST_CASE("rk12 exact on constant flows") {
  Vec w(3), c(3);
  w << 1.0, 2.0, 3.0;
  c << 0.5, -0.25, 1.0;
  auto eval = [&](const Vec&) {
    PsiResult r;
    r.psi = c;
    r.norm_psi = c.norm();
    return r;
  };
  auto [step, k2] = rk12_advance(w, c, 0.3, eval);
  CHECK((step.w_euler - step.w_heun).norm() == 0.0);
  CHECK(rk_error_rms(w, step.w_euler, step.w_heun, 1e-6, 1e-3) == 0.0);
}

TEST_CASE("rk12 scalar decay hand values") {
  Vec w(1);
  w << 1.0;
  auto eval = [&](const Vec& x) {
    PsiResult r;
    r.psi = -x;
    r.norm_psi = r.psi.norm();
    return r;
  };
  const Vec k1 = -w;
  auto [step, k2] = rk12_advance(w, k1, 0.1, eval);
  CHECK(step.w_euler[0] == Approx(0.9));
  CHECK(step.w_heun[0] == Approx(0.905));

  // normalized RMS formula evaluated by hand:
  // sigma = tau_abs + max(|1|, |0.9|) tau_rel
  const double sigma = 1e-6 + 1.0 * 1e-3;
  const double expect = std::abs(0.9 - 0.905) / sigma;
  CHECK(rk_error_rms(w, step.w_euler, step.w_heun, 1e-6, 1e-3) ==
        Approx(expect).epsilon(1e-14));
}

TEST_CASE("update_timestep") {
  StepSafety s;
  s.fac = 1.0;
  s.fac_min = 0.2;
  s.fac_max = 2.0;
  CHECK(update_timestep(1.0, 0.5, s) == Approx(0.5));
  CHECK(update_timestep(4.0, 0.5, s) == Approx(0.25));
  CHECK(update_timestep(1e-4, 0.5, s) == Approx(1.0));  // clamped at fac_max
  CHECK(update_timestep(0.0, 0.5, s) == Approx(1.0));   // eps = 0 branch
}

TEST_CASE("update_cg_tolerance") {
  CgTolerancePolicy pol;  // k_tau = 0.1
  ToleranceHistory h;
  h.valid = true;
  h.norm_psi = 10.0;
  h.norm_rhs = 10.0;
  h.norm_jt_lambda = 10.0;  // accuracy estimate = 10
  CHECK(update_cg_tolerance(h, 0.1, pol) == Approx(0.1 * 0.1));

  ToleranceHistory none;  // first evaluation: min(k_tau ||g0||, default)
  CHECK(update_cg_tolerance(none, 1.0, pol) == Approx(pol.fallback));
  CHECK(update_cg_tolerance(none, 1e-7, pol) == Approx(1e-8));

  h.norm_jt_lambda = 0.0;  // degenerate guard: constraint branch only
  CHECK(update_cg_tolerance(h, 0.05, pol) == Approx(0.005));

  h.norm_jt_lambda = 10.0;
  CHECK(update_cg_tolerance(h, 1e-300, pol) == Approx(pol.floor));
}

TEST_CASE("update_rk_tolerance") {
  // Lipschitz estimate 1, ||Psi|| = 1e-2, k_tau = 0.1 -> candidate 1e-3
  CHECK(update_rk_tolerance(1e-2, 0.1, 1e-2, 1.0, 1.0) == Approx(1e-3));
  // previous smaller -> keep it
  CHECK(update_rk_tolerance(1e-4, 0.1, 1e-2, 1.0, 1.0) == Approx(1e-4));
  // identical consecutive Psi -> unchanged
  CHECK(update_rk_tolerance(1e-4, 0.1, 1e-2, 1.0, 0.0) == Approx(1e-4));

  // monotone non-increasing under any sequence of updates
  SplitMix64 rng(5);
  double tau = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double next = update_rk_tolerance(tau, 0.1, rng.uniform(0.0, 2.0),
                                            rng.uniform(0.0, 2.0),
                                            rng.uniform(0.0, 2.0));
    CHECK(next <= tau);
    tau = next;
  }
}

TEST_CASE("toy problems satisfy the FlowProblem invariants") {
  SplitMix64 rng(21);
  QuadraticEq q(4);
  SphereLinear sp;
  BoxIneq box;
  MixedQP mixed;
  ParabolaEq par;
  const ConstrainedProblem* inner[] = {&q, &sp, &box, &mixed, &par};
  for (const auto* ip : inner) {
    SlackAugmented pb(*ip);
    const Vec w = random_vec(rng, pb.dim_w(), 0.2, 1.3);
    CHECK(adjoint_identity_defect(pb, w, 25, 77) < 1e-12);
    const Vec g = pb.grad(w);
    const Vec dir = random_vec(rng, pb.dim_w());
    const double err = fd_check_scalar(
        [&](const Vec& x) { return pb.cost(x); }, w, g, dir,
        {1e-4, 1e-5, 1e-6});
    CHECK(err < 1e-6);
  }
}

TEST_CASE("run_flow: equality quadratic") {
  QuadraticEq inner(3);
  SlackAugmented pb(inner);
  Vec w0(3);
  w0 << 0.3, -0.4, 0.8;
  FlowSettings st = FlowSettings::preset(Mode::S4);
  st.tau_psi = 1e-6;
  auto trace = run_flow(pb, w0, Scalings::identity(3, 1), st);
  REQUIRE(trace.termination == Termination::Converged);
  CHECK((trace.w_final - inner.optimum()).norm() < 1e-5);
}

TEST_CASE("run_flow: sphere constraint with linear objective") {
  SphereLinear inner;
  SlackAugmented pb(inner);
  Vec w0(2);
  w0 << 0.6, 0.8;
  FlowSettings st = FlowSettings::preset(Mode::S4);
  st.tau_psi = 1e-6;
  auto trace = run_flow(pb, w0, Scalings::identity(2, 1), st);
  REQUIRE(trace.termination == Termination::Converged);
  CHECK((trace.w_final - inner.optimum()).norm() < 1e-4);
}

TEST_CASE("run_flow: active inequality via slack") {
  BoxIneq inner;
  SlackAugmented pb(inner);
  Vec x0(1);
  x0 << 0.0;
  const Vec w0 = pb.initial_state(x0);
  FlowSettings st = FlowSettings::preset(Mode::S4);
  st.tau_psi = 1e-7;
  auto trace = run_flow(pb, w0, Scalings::identity(2, 1), st);
  REQUIRE(trace.termination == Termination::Converged);
  CHECK(trace.w_final[0] == Approx(1.0).margin(1e-4));
  CHECK(std::abs(trace.w_final[1]) < 1e-2);  // active slack goes to zero
}

TEST_CASE("run_flow trace bookkeeping (FSAL economy)") {
  SphereLinear inner;
  SlackAugmented pb(inner);
  Vec w0(2);
  w0 << 0.6, 0.8;
  for (Mode m : {Mode::S1, Mode::S3, Mode::S4}) {
    FlowSettings st = FlowSettings::preset(m);
    st.tau_psi = 1e-5;
    auto trace = run_flow(pb, w0, Scalings::identity(2, 1), st);
    INFO("mode " << static_cast<int>(m));
    REQUIRE(trace.termination == Termination::Converged);
    // exactly one Psi evaluation per attempted step plus the initial one
    CHECK(trace.psi_calls ==
          1 + trace.accepted_steps + trace.rejected_steps);
    for (size_t i = 1; i < trace.records.size(); ++i)
      CHECK(trace.records[i].t > trace.records[i - 1].t);
  }
}

TEST_CASE("one Euler step obeys the inexact descent bound (linear rows)") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 12, m = 4;
    Mat a(m, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    LinearConstrained inner(a, random_vec(rng, m), random_vec(rng, n));
    SlackAugmented pb(inner);
    const Vec w = random_vec(rng, n);

    // deliberately loose CG so the residual term matters
    PsiOptions opt;
    opt.tau_cg = 1e-2;
    opt.cg_max_iter = 3;
    const auto sc = Scalings::identity(n, m);
    auto r = compute_psi(pb, w, sc, opt);

    // true residual of the Schur system (not the recurrence estimate)
    auto schur = [&](const Vec& x) {
      return pb.jac_apply(w, pb.jac_adjoint_apply(w, x));
    };
    const Vec rhs = pb.constraint(w) - pb.jac_apply(w, pb.grad(w));
    const double rnorm = (rhs - schur(r.lambda)).norm();
    const double g0 = pb.constraint(w).norm();

    for (double dt : {0.5, 1.0, 1.5}) {
      const double g1 = pb.constraint(w + dt * r.psi).norm();
      CHECK(g1 <= std::abs(1.0 - dt) * g0 + dt * rnorm + 1e-12);
    }
  }
}

TEST_CASE("Psi_bar is invariant under the choice of S_g (direct solves)") {
  MixedQP inner;
  SlackAugmented pb(inner);
  SplitMix64 rng(41);
  const Vec w = random_vec(rng, pb.dim_w(), 0.2, 1.4);
  Scalings sc1 = Scalings::identity(pb.dim_w(), pb.dim_g());
  Scalings sc2 = sc1;
  sc2.s_g << 3.0, 0.25;  // arbitrary positive row scales
  PsiOptions opt;
  opt.solver = PsiOptions::Solver::Direct;
  auto r1 = compute_psi(pb, w, sc1, opt);
  auto r2 = compute_psi(pb, w, sc2, opt);
  CHECK((r1.psi - r2.psi).norm() <= 1e-10 * std::max(1.0, r1.psi.norm()));
}
