#pragma once

// The Lagrangian right-hand side: the flow-map acceleration
// F(phi, phi_t, h0), evaluated entirely on the label grid. Conjugating the
// Eulerian operators by composition with phi turns every x-derivative of a
// composed quantity into (d/dx)/phi_x, so no interpolation happens inside
// the time loop; the elliptic inversion becomes the SPD problem
//   3 h0 w - d/dx( (h0^3 / phi_x^4) dw/dx ) = phi_x * (t1 + t2)
// with t1 = 3 eta D(eta), t2 = 2 D(eta^3 (D v)^2), eta = h0 / phi_x,
// D = (d/dx)/phi_x, and F = -w.

#include "gnflow/elliptic.hpp"
#include "gnflow/grid.hpp"

namespace gnflow {

/// States with min phi_x at or below this are treated as having left the
/// diffeomorphism group (candidate blow-up) and abort with
/// monotonicity_loss.
inline constexpr double kMonotonicityFloor = 1e-8;

/// Lagrangian state: psi = phi - id (periodic displacement) and the label
/// velocity v = phi_t. Valid states have min(1 + psi_x) > kMonotonicityFloor.
struct FlowMapState {
  Field psi;
  Field v;
};

// Vector-space operations so the state plugs into the generic RK4 kernel.
inline FlowMapState operator+(const FlowMapState& a, const FlowMapState& b) {
  return {a.psi + b.psi, a.v + b.v};
}
inline FlowMapState operator*(double s, const FlowMapState& a) {
  return {s * a.psi, s * a.v};
}

/// phi_x = 1 + psi_x (centered2) and the label-side height eta = h0 / phi_x;
/// eta * phi_x == h0 to machine precision by construction.
struct LagrangianCache {
  Field phix;
  Field eta;
};

/// Throws monotonicity_loss if min phi_x <= kMonotonicityFloor.
LagrangianCache build_lagrangian_cache(const PeriodicGrid& g, const Field& psi,
                                       const HeightField& h0);

/// (d/dx f) / phi_x with the centered2 scheme — the derivative an
/// Eulerian-composed quantity sees in label coordinates.
Field conjugated_derivative(const PeriodicGrid& g, const Field& phix,
                            const Field& f);

/// The acceleration F(phi, v, h0) of the flow-map equation phi_tt = F.
Field lagrangian_acceleration(const PeriodicGrid& g, const FlowMapState& state,
                              const HeightField& h0);

/// First-order system form: d/dt (psi, v) = (v, F).
FlowMapState lagrangian_rhs(const PeriodicGrid& g, const FlowMapState& state,
                            const HeightField& h0);

}  // namespace gnflow
