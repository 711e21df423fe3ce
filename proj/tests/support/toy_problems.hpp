#pragma once

// Small analytic constrained problems with known optima, used to exercise the
// flow engine end to end.

#include "wecflow/core/types.hpp"
#include "wecflow/flow/slack.hpp"

namespace wecflow::testing {

using wecflow::Vec;
using wecflow::Mat;
using wecflow::Index;

/// min 1/2 ||x||^2  s.t.  x_1 = 1; optimum e_1.
class QuadraticEq final : public flow::ConstrainedProblem {
 public:
  explicit QuadraticEq(Index n) : n_(n) {}
  Index dim_x() const override { return n_; }
  Index num_eq() const override { return 1; }
  double cost(const Vec& x) const override { return 0.5 * x.squaredNorm(); }
  Vec grad(const Vec& x) const override { return x; }
  Vec eq(const Vec& x) const override {
    Vec g(1);
    g[0] = x[0] - 1.0;
    return g;
  }
  Mat eq_jac(const Vec& x) const override {
    Mat j = Mat::Zero(1, n_);
    j(0, 0) = 1.0;
    return j;
  }
  Vec optimum() const {
    Vec x = Vec::Zero(n_);
    x[0] = 1.0;
    return x;
  }

 private:
  Index n_;
};

/// min x_1  s.t.  ||x||^2 = 1 in R^2; optimum (-1, 0).
class SphereLinear final : public flow::ConstrainedProblem {
 public:
  Index dim_x() const override { return 2; }
  Index num_eq() const override { return 1; }
  double cost(const Vec& x) const override { return x[0]; }
  Vec grad(const Vec& x) const override {
    Vec g(2);
    g << 1.0, 0.0;
    return g;
  }
  Vec eq(const Vec& x) const override {
    Vec g(1);
    g[0] = x.squaredNorm() - 1.0;
    return g;
  }
  Mat eq_jac(const Vec& x) const override { return 2.0 * x.transpose(); }
  Vec optimum() const {
    Vec x(2);
    x << -1.0, 0.0;
    return x;
  }
};

/// min (x_1 - 2)^2  s.t.  x_1 <= 1; active optimum x_1 = 1.
class BoxIneq final : public flow::ConstrainedProblem {
 public:
  Index dim_x() const override { return 1; }
  Index num_ineq() const override { return 1; }
  double cost(const Vec& x) const override {
    return (x[0] - 2.0) * (x[0] - 2.0);
  }
  Vec grad(const Vec& x) const override {
    Vec g(1);
    g[0] = 2.0 * (x[0] - 2.0);
    return g;
  }
  Vec ineq(const Vec& x) const override {
    Vec h(1);
    h[0] = x[0] - 1.0;
    return h;
  }
  Mat ineq_jac(const Vec&) const override {
    Mat j(1, 1);
    j(0, 0) = 1.0;
    return j;
  }
  Vec optimum() const {
    Vec x(1);
    x << 1.0;
    return x;
  }
};

/// min 1/2 ((x-2)^2 + (y-2)^2)  s.t.  x + y = 2,  x <= 0.75;
/// active optimum (0.75, 1.25) with multipliers (1.25, 0.5... >= 0).
class MixedQP final : public flow::ConstrainedProblem {
 public:
  Index dim_x() const override { return 2; }
  Index num_eq() const override { return 1; }
  Index num_ineq() const override { return 1; }
  double cost(const Vec& x) const override {
    return 0.5 * ((x[0] - 2.0) * (x[0] - 2.0) + (x[1] - 2.0) * (x[1] - 2.0));
  }
  Vec grad(const Vec& x) const override {
    Vec g(2);
    g << x[0] - 2.0, x[1] - 2.0;
    return g;
  }
  Vec eq(const Vec& x) const override {
    Vec g(1);
    g[0] = x[0] + x[1] - 2.0;
    return g;
  }
  Mat eq_jac(const Vec&) const override {
    Mat j(1, 2);
    j << 1.0, 1.0;
    return j;
  }
  Vec ineq(const Vec& x) const override {
    Vec h(1);
    h[0] = x[0] - 0.75;
    return h;
  }
  Mat ineq_jac(const Vec&) const override {
    Mat j(1, 2);
    j << 1.0, 0.0;
    return j;
  }
  Vec optimum() const {
    Vec x(2);
    x << 0.75, 1.25;
    return x;
  }
};

/// min x^2 + (y-1)^2  s.t.  y = x^2; minima at (+-sqrt(1/2), 1/2).
class ParabolaEq final : public flow::ConstrainedProblem {
 public:
  Index dim_x() const override { return 2; }
  Index num_eq() const override { return 1; }
  double cost(const Vec& x) const override {
    return x[0] * x[0] + (x[1] - 1.0) * (x[1] - 1.0);
  }
  Vec grad(const Vec& x) const override {
    Vec g(2);
    g << 2.0 * x[0], 2.0 * (x[1] - 1.0);
    return g;
  }
  Vec eq(const Vec& x) const override {
    Vec g(1);
    g[0] = x[1] - x[0] * x[0];
    return g;
  }
  Mat eq_jac(const Vec& x) const override {
    Mat j(1, 2);
    j << -2.0 * x[0], 1.0;
    return j;
  }
  Vec optimum() const {
    Vec x(2);
    x << std::sqrt(0.5), 0.5;
    return x;
  }
};

/// Linear-constraint problem g(x) = A x - b with a quadratic cost; the
/// one-step constraint-descent bound is exact for it (no curvature term).
class LinearConstrained final : public flow::ConstrainedProblem {
 public:
  LinearConstrained(Mat a, Vec b, Vec x_ref)
      : a_(std::move(a)), b_(std::move(b)), x_ref_(std::move(x_ref)) {}
  Index dim_x() const override { return a_.cols(); }
  Index num_eq() const override { return a_.rows(); }
  double cost(const Vec& x) const override {
    return 0.5 * (x - x_ref_).squaredNorm();
  }
  Vec grad(const Vec& x) const override { return x - x_ref_; }
  Vec eq(const Vec& x) const override { return a_ * x - b_; }
  Mat eq_jac(const Vec&) const override { return a_; }

 private:
  Mat a_;
  Vec b_;
  Vec x_ref_;
};

}  // namespace wecflow::testing
