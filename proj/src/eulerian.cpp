#include "gnflow/eulerian.hpp"

#include <cmath>

namespace gnflow {

EulerianState eulerian_rhs(const PeriodicGrid& g, const EulerianState& state,
                           bool use_dealias) {
  require_valid(g, state.h);
  const Field& h = state.h.values;
  const Field& u = state.u;
  if (u.size() != g.n)
    fail(ErrorKind::config_error, "velocity/grid size mismatch");

  Field flux = h * u;
  if (use_dealias) flux = dealias(g, flux);
  Field dh = -derivative(g, flux, Scheme::spectral);

  Field adv = u * derivative(g, u, Scheme::spectral);
  if (use_dealias) adv = dealias(g, adv);

  const Field hx = derivative(g, h, Scheme::centered2);
  const Field ux = derivative(g, u, Scheme::centered2);
  const Field source =
      3.0 * h * hx +
      2.0 * derivative(g, h.cube() * ux.square(), Scheme::centered2);
  Field du = -adv - solve_gn_operator(g, state.h, source);

  return {{std::move(dh)}, std::move(du)};
}

EulerianTrajectory integrate_eulerian(const PeriodicGrid& g,
                                      const EulerianState& state0,
                                      const IntegratorConfig& config) {
  if (!(config.T >= 0.0) || !(config.cfl_safety > 0.0) ||
      !(config.cfl_safety <= 1.0) || config.max_steps < 1 ||
      config.record_stride < 1)
    fail(ErrorKind::config_error, "invalid integrator configuration");
  require_valid(g, state0.h);
  if (!state0.u.allFinite())
    fail(ErrorKind::config_error, "initial velocity must be finite");

  EulerianTrajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(state0);
  if (config.T == 0.0) return traj;

  double dt = config.dt > 0.0
                  ? config.dt
                  : default_time_step(g, state0.u, state0.h, config.cfl_safety);
  const long nsteps = long(std::ceil(config.T / dt - 1e-9));
  dt = config.T / double(nsteps);
  if (nsteps > config.max_steps) {
    traj.termination = Termination::step_rejected;
    return traj;
  }

  const auto rhs = [&](const EulerianState& s) {
    return eulerian_rhs(g, s, config.dealias);
  };

  EulerianState state = state0;
  for (long step = 1; step <= nsteps; ++step) {
    EulerianState next;
    try {
      next = rk4_step(rhs, state, dt);
    } catch (const Error& e) {
      traj.termination = e.kind() == ErrorKind::ill_posed
                             ? Termination::ill_posed
                             : Termination::step_rejected;
      return traj;
    }
    if (!next.h.values.allFinite() || !next.u.allFinite()) {
      traj.termination = Termination::step_rejected;
      return traj;
    }
    if (next.h.values.minCoeff() <= 0.0) {
      traj.termination = Termination::ill_posed;
      return traj;
    }
    state = std::move(next);
    if (step % config.record_stride == 0 || step == nsteps) {
      traj.times.push_back(double(step) * dt);
      traj.states.push_back(state);
    }
  }
  return traj;
}

}  // namespace gnflow
