#pragma once

#include <stdexcept>

#include "wecflow/core/types.hpp"
#include "wecflow/flow/problem.hpp"

namespace wecflow::flow {

/// Diagonal scalings w = S_w wbar, g = S_g gbar, f = f0 fbar. S_w fixes the
/// relative weighting of the variables (and therefore the trajectory); S_g
/// only preconditions the Schur system and leaves the trajectory unchanged.
struct Scalings {
  Vec s_w;       // per-entry reference magnitudes, length dim_w
  Vec s_g;       // constraint row scales, length dim_g
  double f0 = 1.0;

  static Scalings identity(Index dim_w, Index dim_g) {
    Scalings s;
    s.s_w = Vec::Ones(dim_w);
    s.s_g = Vec::Ones(dim_g);
    s.f0 = 1.0;
    return s;
  }

  void validate() const {
    if ((s_w.array() <= 0.0).any() || (s_g.array() <= 0.0).any() || !(f0 > 0))
      throw std::invalid_argument("Scalings: entries must be strictly positive");
  }
};

struct EquilibrationResult {
  Vec s_g;
  Index degenerate_rows = 0;  // rows with (numerically) zero norm, scale kept 1
};

/// Row equilibration of the scaled Jacobian J_g(w) diag(s_w): inequality rows
/// are normalized with their 2-norm, state/equality rows are left at 1.
/// Zero-norm rows keep scale 1 and are counted, not rejected.
inline EquilibrationResult equilibrate_rows(const FlowProblem& problem,
                                            const Vec& w, const Vec& s_w) {
  EquilibrationResult out;
  out.s_g = Vec::Ones(problem.dim_g());
  const Index n_ineq = problem.num_inequalities();
  if (n_ineq == 0) return out;
  const Vec norms = problem.row_scale_hint(w, s_w);
  if (norms.size() != n_ineq)
    throw std::logic_error("equilibrate_rows: row_scale_hint size mismatch");
  const Index off = problem.dim_g() - n_ineq;
  for (Index i = 0; i < n_ineq; ++i) {
    if (norms[i] > 1e-300) {
      out.s_g[off + i] = norms[i];
    } else {
      out.degenerate_rows += 1;
    }
  }
  return out;
}

}  // namespace wecflow::flow
