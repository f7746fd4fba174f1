#include "gnflow/integrate.hpp"

#include <cmath>

#include "gnflow/diagnostics.hpp"

namespace gnflow {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::monotonicity_loss: return "monotonicity_loss";
    case Termination::step_rejected: return "step_rejected";
    case Termination::ill_posed: return "ill_posed";
  }
  return "unknown";
}

double default_time_step(const PeriodicGrid& g, const Field& v,
                         const HeightField& h0, double cfl_safety) {
  // Gravity-wave speed proxy; a safety heuristic, not a stability bound.
  const double c_ref = std::sqrt(1.0 + (h0.values - 1.0).abs().maxCoeff());
  return cfl_safety * g.dx / (v.abs().maxCoeff() + c_ref);
}

FlowMapState step_rk4(const PeriodicGrid& g, const FlowMapState& state,
                      double dt, const HeightField& h0) {
  const auto rhs = [&](const FlowMapState& s) {
    return lagrangian_rhs(g, s, h0);
  };
  FlowMapState next = rk4_step(rhs, state, dt);
  if (!next.psi.allFinite() || !next.v.allFinite())
    fail(ErrorKind::step_rejected, "non-finite state after RK4 step");
  const double min_phix =
      (1.0 + derivative(g, next.psi, Scheme::centered2)).minCoeff();
  if (!(min_phix > kMonotonicityFloor))
    fail(ErrorKind::monotonicity_loss,
         "min phi_x = " + std::to_string(min_phix) + " after step");
  return next;
}

Trajectory integrate(const PeriodicGrid& g, const FlowMapState& state0,
                     const HeightField& h0, const IntegratorConfig& config) {
  if (!(config.T >= 0.0) || !std::isfinite(config.T) ||
      !(config.cfl_safety > 0.0) || !(config.cfl_safety <= 1.0) ||
      config.max_steps < 1 || config.record_stride < 1)
    fail(ErrorKind::config_error, "invalid integrator configuration");
  require_valid(g, h0);
  if (state0.psi.size() != g.n || state0.v.size() != g.n ||
      !state0.psi.allFinite() || !state0.v.allFinite())
    fail(ErrorKind::config_error, "invalid initial flow-map state");
  build_lagrangian_cache(g, state0.psi, h0);  // guard check on entry

  Trajectory traj;
  const auto record = [&](double t, const FlowMapState& s) {
    // Diagnostics first: reconstruction can still reject a state whose
    // nodal secants dip below the guard even though the centered
    // differences pass. Nothing is pushed for a rejected state.
    DiagnosticsRecord rec = make_record(g, t, s, h0, config.diag_sigma);
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.diagnostics.push_back(rec);
  };
  record(0.0, state0);
  if (config.T == 0.0) return traj;

  double dt = config.dt > 0.0
                  ? config.dt
                  : default_time_step(g, state0.v, h0, config.cfl_safety);
  const long nsteps = long(std::ceil(config.T / dt - 1e-9));
  dt = config.T / double(nsteps);
  if (nsteps > config.max_steps) {
    traj.termination = Termination::step_rejected;
    return traj;
  }

  FlowMapState state = state0;
  for (long step = 1; step <= nsteps; ++step) {
    try {
      state = step_rk4(g, state, dt, h0);
      if (step % config.record_stride == 0 || step == nsteps)
        record(double(step) * dt, state);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::config_error) throw;
      traj.termination = e.kind() == ErrorKind::monotonicity_loss
                             ? Termination::monotonicity_loss
                             : Termination::step_rejected;
      return traj;
    }
  }
  return traj;
}

}  // namespace gnflow
