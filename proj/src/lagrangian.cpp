#include "gnflow/lagrangian.hpp"

namespace gnflow {

LagrangianCache build_lagrangian_cache(const PeriodicGrid& g, const Field& psi,
                                       const HeightField& h0) {
  require_valid(g, h0);
  Field phix = 1.0 + derivative(g, psi, Scheme::centered2);
  if (!(phix.minCoeff() > kMonotonicityFloor))
    fail(ErrorKind::monotonicity_loss,
         "min phi_x = " + std::to_string(phix.minCoeff()) +
             " at the monotonicity guard");
  Field eta = h0.values / phix;
  return {std::move(phix), std::move(eta)};
}

Field conjugated_derivative(const PeriodicGrid& g, const Field& phix,
                            const Field& f) {
  if (!(phix.minCoeff() > kMonotonicityFloor))
    fail(ErrorKind::monotonicity_loss,
         "conjugated derivative on a non-diffeomorphic map");
  return derivative(g, f, Scheme::centered2) / phix;
}

Field lagrangian_acceleration(const PeriodicGrid& g, const FlowMapState& state,
                              const HeightField& h0) {
  const LagrangianCache c = build_lagrangian_cache(g, state.psi, h0);

  const Field d_eta = conjugated_derivative(g, c.phix, c.eta);
  const Field d_v = conjugated_derivative(g, c.phix, state.v);
  const Field t1 = 3.0 * c.eta * d_eta;
  const Field t2 =
      2.0 * conjugated_derivative(g, c.phix, c.eta.cube() * d_v.square());

  // SPD form of the conjugated inversion (multiply through by phi_x).
  const EllipticProblem p{3.0 * h0.values,
                          h0.values.cube() / c.phix.pow(4)};
  const Field w = solve_elliptic(g, p, c.phix * (t1 + t2));
  return -w;
}

FlowMapState lagrangian_rhs(const PeriodicGrid& g, const FlowMapState& state,
                            const HeightField& h0) {
  return {state.v, lagrangian_acceleration(g, state, h0)};
}

}  // namespace gnflow
