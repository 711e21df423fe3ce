#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "wecflow/core/types.hpp"

namespace wecflow::flow {

enum class Termination {
  Converged,      // ||Psi|| <= tau_psi
  TimeBudget,     // t reached t_max
  CgFailureCap,   // too many consecutive dt halvings after CG failures
  StepCollapse,   // dt shrank below representable progress
  NonFinite,      // state or flow value became non-finite
};

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged:    return "converged";
    case Termination::TimeBudget:   return "time_budget";
    case Termination::CgFailureCap: return "cg_failure_cap";
    case Termination::StepCollapse: return "step_collapse";
    case Termination::NonFinite:    return "non_finite";
  }
  return "unknown";
}

struct TraceRecord {
  double t = 0.0;
  double dt = 0.0;        // step that produced this iterate (0 for the start)
  double norm_psi = 0.0;  // scaled variables
  double norm_g = 0.0;
  double cost = 0.0;      // scaled cost fbar
  double tau_cg = 0.0;
  double tau_rk = 0.0;
  Index cg_iters = 0;
  double wall_s = 0.0;    // wall time of the Psi evaluation at this iterate
};

struct FlowTrace {
  std::vector<TraceRecord> records;  // one per accepted iterate, t increasing
  Vec w_final;                       // unscaled
  Termination termination = Termination::TimeBudget;
  Index accepted_steps = 0;
  Index rejected_steps = 0;
  Index psi_calls = 0;
  double psi_wall_s = 0.0;   // total wall time spent in Psi evaluations
  Index cg_total_iters = 0;

  static const char* csv_header() {
    return "t,dt,norm_psi,norm_g,cost,tau_cg,tau_rk,cg_iters,wall_s";
  }

  void write_csv(std::ostream& os) const {
    os << csv_header() << "\n";
    os.precision(17);
    for (const auto& r : records) {
      os << r.t << ',' << r.dt << ',' << r.norm_psi << ',' << r.norm_g << ','
         << r.cost << ',' << r.tau_cg << ',' << r.tau_rk << ',' << r.cg_iters
         << ',' << r.wall_s << "\n";
    }
  }
};

}  // namespace wecflow::flow
