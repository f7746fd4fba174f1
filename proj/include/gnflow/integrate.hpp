#pragma once

// Explicit time stepping of the flow-map ODE: classical RK4 with a fixed
// step, diffeomorphism-guard revalidation after every step, and typed early
// termination instead of silent blow-up.

#include <vector>

#include "gnflow/diagnostics_record.hpp"
#include "gnflow/grid.hpp"
#include "gnflow/lagrangian.hpp"

namespace gnflow {

enum class Termination {
  completed,
  monotonicity_loss,
  step_rejected,
  ill_posed,  // Eulerian oracle runs only (h lost positivity)
};

const char* to_string(Termination t);

struct IntegratorConfig {
  /// Requested step; <= 0 selects cfl_safety * dx / (max|v| + c_ref) with
  /// c_ref = sqrt(1 + max|h0 - 1|). The step actually used is
  /// T / ceil(T / dt) so that uniform steps land exactly on T.
  double dt = 0.0;
  double T = 1.0;
  double cfl_safety = 0.5;
  long max_steps = 2'000'000;
  int record_stride = 10;   ///< snapshot every this many steps
  double diag_sigma = 0.6;  ///< sigma for the recorded Sobolev norms
  bool dealias = true;      ///< Eulerian oracle: 2/3-rule on spectral products
};

double default_time_step(const PeriodicGrid& g, const Field& v,
                         const HeightField& h0, double cfl_safety);

/// One classical RK4 step of y' = rhs(y) for any type with + and scalar *.
template <class State, class Rhs>
State rk4_step(const Rhs& rhs, const State& y, double dt) {
  const State k1 = rhs(y);
  const State k2 = rhs(y + (0.5 * dt) * k1);
  const State k3 = rhs(y + (0.5 * dt) * k2);
  const State k4 = rhs(y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// One step of the flow-map system; the result is revalidated (finite values,
/// min phi_x above the guard). Throws monotonicity_loss or step_rejected.
FlowMapState step_rk4(const PeriodicGrid& g, const FlowMapState& state,
                      double dt, const HeightField& h0);

struct Trajectory {
  std::vector<double> times;
  std::vector<FlowMapState> states;
  std::vector<DiagnosticsRecord> diagnostics;
  Termination termination = Termination::completed;
};

/// Fixed-step RK4 from state0 to time T, recording a snapshot (state +
/// diagnostics of the reconstructed Eulerian fields) every record_stride
/// steps and at the final time. Guard violations terminate the trajectory
/// with a typed reason; every recorded state is valid.
Trajectory integrate(const PeriodicGrid& g, const FlowMapState& state0,
                     const HeightField& h0, const IntegratorConfig& config);

}  // namespace gnflow
