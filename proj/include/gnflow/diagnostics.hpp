#pragma once

// Conserved-quantity tracking, the exact solitary-wave generator, and
// convergence/continuity probes used by the benchmark harness.

#include <vector>

#include "gnflow/diagnostics_record.hpp"
#include "gnflow/eulerian.hpp"
#include "gnflow/flow_map.hpp"
#include "gnflow/grid.hpp"
#include "gnflow/integrate.hpp"

namespace gnflow {

/// Integral of h - 1.
double mass(const PeriodicGrid& g, const HeightField& h);

/// Integral of h u.
double momentum(const PeriodicGrid& g, const EulerianState& state);

/// Serre energy E = int 1/2 h u^2 + 1/2 (h-1)^2 + 1/6 h^3 u_x^2 (g = 1),
/// with a spectral u_x. The system as discretized does not conserve E
/// exactly; its drift is a sensitive regression signal, verified rather
/// than assumed.
double energy(const PeriodicGrid& g, const EulerianState& state);

/// Classical solitary wave of the system over depth 1:
///   h = 1 + a sech^2(kappa (x - x0)),  u = c (1 - 1/h),
///   c = sqrt(1 + a),  kappa = sqrt(3a / (4(1 + a))),
/// centered at x0 = L/2. Requires 0 < a < 2. The profile constants are
/// validated by the traveling-wave residual test before tests rely on them.
EulerianState solitary_wave(double a, const PeriodicGrid& g);

/// Exact translated solitary profile at time t (periodic wrap), same
/// conventions as solitary_wave.
EulerianState solitary_wave_at(double a, const PeriodicGrid& g, double t);

/// Least-squares order: slope of log(error) against log(1/resolution
/// factor), positive when errors decrease. factors are resolution
/// multipliers (e.g. {1, 2, 4}); needs at least two points.
double convergence_rate(const std::vector<double>& errors,
                        const std::vector<double>& factors);

/// Snapshot diagnostics of a Lagrangian state via reconstruction.
DiagnosticsRecord make_record(const PeriodicGrid& g, double t,
                              const FlowMapState& state,
                              const HeightField& h0, double sigma);

/// Continuity-of-dependence probe: integrates from (h0, u0) and
/// (h0, u0 + delta * w) for a fixed unit-norm rough direction w in
/// H^{sigma+1}, and returns
///   sup_t ( |dh|_{H^sigma}^2 + |du|_{H^{sigma+1}}^2 )^{1/2} / delta
/// over the recorded output times of the reconstructed solutions.
/// Reports a difference quotient, not a Lipschitz constant.
double continuous_dependence_probe(const PeriodicGrid& g,
                                   const HeightField& h0, const Field& u0,
                                   double delta, double sigma,
                                   const IntegratorConfig& config);

}  // namespace gnflow
