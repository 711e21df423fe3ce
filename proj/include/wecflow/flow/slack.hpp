#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>

#include "wecflow/core/types.hpp"
#include "wecflow/flow/problem.hpp"

namespace wecflow::flow {

/// Initial slack values for the quadratic slack formulation h + s*s = 0:
/// rows that are satisfied at the initial point start exactly feasible,
/// violated rows start with s = 0 and are repaired by the flow.
inline Vec init_slacks(const Vec& h0) {
  if (!h0.allFinite())
    throw std::invalid_argument("init_slacks: non-finite inequality values");
  return h0.unaryExpr([](double h) { return std::sqrt(std::max(-h, 0.0)); });
}

/// g_I = h + s (.) s
inline Vec augmented_constraint(const Vec& h, const Vec& s) {
  if (h.size() != s.size())
    throw std::invalid_argument("augmented_constraint: length mismatch");
  return h + s.cwiseProduct(s);
}

/// A smooth problem with explicit equality and inequality constraints, given
/// by dense Jacobians. Intended for small analytic problems; the slack
/// augmentation below turns it into a FlowProblem.
class ConstrainedProblem {
 public:
  virtual ~ConstrainedProblem() = default;
  virtual Index dim_x() const = 0;
  virtual Index num_eq() const { return 0; }
  virtual Index num_ineq() const { return 0; }
  virtual double cost(const Vec& x) const = 0;
  virtual Vec grad(const Vec& x) const = 0;
  virtual Vec eq(const Vec& x) const { return Vec(0); }
  virtual Vec ineq(const Vec& x) const { return Vec(0); }
  virtual Mat eq_jac(const Vec& x) const { return Mat(0, dim_x()); }
  virtual Mat ineq_jac(const Vec& x) const { return Mat(0, dim_x()); }
};

/// Quadratic-slack augmentation: w = [x, s], g = [eq(x), ineq(x) + s*s].
class SlackAugmented final : public FlowProblem {
 public:
  explicit SlackAugmented(const ConstrainedProblem& inner) : inner_(inner) {}

  Index dim_w() const override { return inner_.dim_x() + inner_.num_ineq(); }
  Index dim_g() const override { return inner_.num_eq() + inner_.num_ineq(); }
  Index num_inequalities() const override { return inner_.num_ineq(); }

  double cost(const Vec& w) const override { return inner_.cost(x_of(w)); }

  Vec grad(const Vec& w) const override {
    Vec out = Vec::Zero(dim_w());
    out.head(inner_.dim_x()) = inner_.grad(x_of(w));
    return out;
  }

  Vec constraint(const Vec& w) const override {
    const Vec x = x_of(w);
    Vec out(dim_g());
    out.head(inner_.num_eq()) = inner_.eq(x);
    out.tail(inner_.num_ineq()) =
        augmented_constraint(inner_.ineq(x), s_of(w));
    return out;
  }

  Vec jac_apply(const Vec& w, const Vec& v) const override {
    const Vec x = x_of(w);
    const Vec vx = v.head(inner_.dim_x());
    Vec out(dim_g());
    out.head(inner_.num_eq()) = inner_.eq_jac(x) * vx;
    out.tail(inner_.num_ineq()) =
        inner_.ineq_jac(x) * vx +
        2.0 * s_of(w).cwiseProduct(v.tail(inner_.num_ineq()));
    return out;
  }

  Vec jac_adjoint_apply(const Vec& w, const Vec& p) const override {
    const Vec x = x_of(w);
    Vec out(dim_w());
    out.head(inner_.dim_x()) =
        inner_.eq_jac(x).transpose() * p.head(inner_.num_eq()) +
        inner_.ineq_jac(x).transpose() * p.tail(inner_.num_ineq());
    out.tail(inner_.num_ineq()) =
        2.0 * s_of(w).cwiseProduct(p.tail(inner_.num_ineq()));
    return out;
  }

  Vec row_scale_hint(const Vec& w, const Vec& s_w) const override {
    const Mat jh = inner_.ineq_jac(x_of(w));
    const Vec s = s_of(w);
    const Vec swx = s_w.head(inner_.dim_x());
    const Vec sws = s_w.tail(inner_.num_ineq());
    Vec out(inner_.num_ineq());
    for (Index i = 0; i < out.size(); ++i) {
      const double row2 = (jh.row(i).transpose().cwiseProduct(swx)).squaredNorm();
      const double sl = 2.0 * s[i] * sws[i];
      out[i] = std::sqrt(row2 + sl * sl);
    }
    return out;
  }

  /// Initial augmented state from an initial x: feasible rows start with
  /// g_I = 0 exactly, violated rows with s = 0.
  Vec initial_state(const Vec& x0) const {
    Vec w(dim_w());
    w.head(inner_.dim_x()) = x0;
    w.tail(inner_.num_ineq()) = init_slacks(inner_.ineq(x0));
    return w;
  }

 private:
  Vec x_of(const Vec& w) const { return w.head(inner_.dim_x()); }
  Vec s_of(const Vec& w) const { return w.tail(inner_.num_ineq()); }
  const ConstrainedProblem& inner_;
};

}  // namespace wecflow::flow
