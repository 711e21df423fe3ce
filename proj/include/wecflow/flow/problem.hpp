#pragma once

#include <stdexcept>

#include "wecflow/core/types.hpp"

namespace wecflow::flow {

/// Equality-constrained problem consumed by the flow engine:
///
///   min f(w)   s.t.   g(w) = 0,
///
/// where inequality constraints have already been absorbed through quadratic
/// slack variables, appended as the trailing rows of g. All vectors are real;
/// complex quantities enter as interleaved (re, im) pairs, which makes the
/// engine-side inner product Re[a^H b] an ordinary dot product and adjoints
/// plain transposes.
class FlowProblem {
 public:
  virtual ~FlowProblem() = default;

  virtual Index dim_w() const = 0;
  virtual Index dim_g() const = 0;

  /// Number of trailing inequality (slack-augmented) rows of g. The leading
  /// dim_g() - num_inequalities() rows are state/equality residuals.
  virtual Index num_inequalities() const { return 0; }

  virtual double cost(const Vec& w) const = 0;
  virtual Vec grad(const Vec& w) const = 0;
  virtual Vec constraint(const Vec& w) const = 0;

  /// y = (D_w g)(w) v
  virtual Vec jac_apply(const Vec& w, const Vec& v) const = 0;
  /// y = (D_w g)'(w) p
  virtual Vec jac_adjoint_apply(const Vec& w, const Vec& p) const = 0;

  /// 2-norms of the inequality rows of J_g(w) * diag(s_w), one value per
  /// inequality row. These rows are sparse/explicit, so the norms are cheap
  /// in closed form. Only called when row equilibration is requested.
  virtual Vec row_scale_hint(const Vec& w, const Vec& s_w) const {
    (void)w;
    (void)s_w;
    if (num_inequalities() > 0)
      throw std::logic_error("row_scale_hint not implemented");
    return Vec(0);
  }
};

}  // namespace wecflow::flow
