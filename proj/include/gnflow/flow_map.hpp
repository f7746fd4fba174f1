#pragma once

// Composition with the flow map and its inverse, plus reconstruction of the
// Eulerian fields from the Lagrangian state.
//
// The map phi(x) = x + psi(x) is treated as a degree-one circle map:
// psi is L-periodic, so phi(x + L) = phi(x) + L and the lift is a bijection
// of the real line whenever min phi_x > 0. All interpolation is
// slope-limited cubic Hermite: comonotone (hence range-bounded) wherever the
// data is locally monotone, with over/undershoot at data extrema capped by
// a fraction of the local cell variation. Reconstruction verifies the
// positivity of the rebuilt height explicitly.

#include "gnflow/eulerian.hpp"
#include "gnflow/grid.hpp"
#include "gnflow/lagrangian.hpp"

namespace gnflow {

/// f at arbitrary points (periodic wrap), monotone cubic Hermite.
/// Reproduces nodal values exactly.
Field compose(const PeriodicGrid& g, const Field& f, const Field& points);

/// Forward evaluation of phi = id + psi at arbitrary points, using the same
/// monotone interpolant as invert_diffeo (the circle-map lift).
Field evaluate_diffeo(const PeriodicGrid& g, const Field& psi,
                      const Field& points);

/// For each query y, the x with phi(x) = y, where phi is the monotone
/// interpolant of the nodal map. Accurate to 1e-12 * L in phi(x) - y.
/// Signals monotonicity_loss if the nodal map is not strictly increasing.
Field invert_diffeo(const PeriodicGrid& g, const Field& psi,
                    const Field& queries);

/// Eulerian fields from the Lagrangian state:
///   h = (h0 / phi_x) o phi^{-1},   u = v o phi^{-1}.
EulerianState reconstruct_eulerian(const PeriodicGrid& g,
                                   const FlowMapState& state,
                                   const HeightField& h0);

}  // namespace gnflow
