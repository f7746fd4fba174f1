#pragma once

// Direct solver for the non-local Eulerian form of the system:
//
//   h_t = -d/dx(h u)
//   u_t = -u u_x - (3h u - d/dx(h^3 u_x))^{-1} (3 h h_x + 2 d/dx(h^3 u_x^2))
//
// used as an independent cross-check on the Lagrangian path. Transport and
// advection use spectral derivatives (with optional 2/3 dealiasing of the
// products); the elliptic source is assembled with the same centered2
// derivatives the Lagrangian side uses, so the two formulations agree to
// rounding where the flow map is the identity.

#include "gnflow/elliptic.hpp"
#include "gnflow/grid.hpp"
#include "gnflow/integrate.hpp"

namespace gnflow {

struct EulerianState {
  HeightField h;
  Field u;
};

inline EulerianState operator+(const EulerianState& a, const EulerianState& b) {
  return {{a.h.values + b.h.values}, a.u + b.u};
}
inline EulerianState operator*(double s, const EulerianState& a) {
  return {{s * a.h.values}, s * a.u};
}

/// (dh, du) packed as an EulerianState tangent. Throws ill_posed when h is
/// not strictly positive.
EulerianState eulerian_rhs(const PeriodicGrid& g, const EulerianState& state,
                           bool use_dealias = true);

struct EulerianTrajectory {
  std::vector<double> times;
  std::vector<EulerianState> states;
  Termination termination = Termination::completed;
};

/// RK4 trajectory with a per-step positivity check on h. Positivity loss
/// terminates with ill_posed, NaN/overflow with step_rejected.
EulerianTrajectory integrate_eulerian(const PeriodicGrid& g,
                                      const EulerianState& state0,
                                      const IntegratorConfig& config);

}  // namespace gnflow
