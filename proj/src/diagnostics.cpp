#include "gnflow/diagnostics.hpp"

#include <cmath>
#include <string>

namespace gnflow {

double mass(const PeriodicGrid& g, const HeightField& h) {
  return quadrature(g, h.values - 1.0);
}

double momentum(const PeriodicGrid& g, const EulerianState& state) {
  return quadrature(g, state.h.values * state.u);
}

double energy(const PeriodicGrid& g, const EulerianState& state) {
  const Field& h = state.h.values;
  const Field& u = state.u;
  const Field ux = derivative(g, u, Scheme::spectral);
  return quadrature(g, 0.5 * h * u.square() + 0.5 * (h - 1.0).square() +
                           (1.0 / 6.0) * h.cube() * ux.square());
}

EulerianState solitary_wave_at(double a, const PeriodicGrid& g, double t) {
  if (!(a > 0.0) || !(a < 2.0))
    fail(ErrorKind::config_error,
         "solitary amplitude must lie in (0, 2), got " + std::to_string(a));
  const double c = std::sqrt(1.0 + a);
  const double kappa = std::sqrt(3.0 * a / (4.0 * (1.0 + a)));
  const double x0 = 0.5 * g.length + c * t;
  Field h(g.n);
  for (int j = 0; j < g.n; ++j) {
    // minimal-image distance to the (periodically wrapped) crest
    double xi = g.nodes(j) - x0;
    xi -= g.length * std::round(xi / g.length);
    const double s = 1.0 / std::cosh(kappa * xi);
    h(j) = 1.0 + a * s * s;
  }
  Field u = c * (1.0 - 1.0 / h);
  return {{std::move(h)}, std::move(u)};
}

EulerianState solitary_wave(double a, const PeriodicGrid& g) {
  return solitary_wave_at(a, g, 0.0);
}

double convergence_rate(const std::vector<double>& errors,
                        const std::vector<double>& factors) {
  if (errors.size() != factors.size() || errors.size() < 2)
    fail(ErrorKind::config_error,
         "convergence rate needs at least two matched (error, factor) pairs");
  const int n = int(errors.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    if (!(errors[i] > 0.0) || !(factors[i] > 0.0))
      fail(ErrorKind::config_error,
           "convergence rate needs positive errors and factors");
    const double x = std::log(factors[i]);
    const double y = std::log(errors[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

DiagnosticsRecord make_record(const PeriodicGrid& g, double t,
                              const FlowMapState& state,
                              const HeightField& h0, double sigma) {
  const EulerianState es = reconstruct_eulerian(g, state, h0);
  const double min_phix =
      (1.0 + derivative(g, state.psi, Scheme::centered2)).minCoeff();
  DiagnosticsRecord rec;
  rec.t = t;
  rec.mass = mass(g, es.h);
  rec.momentum = momentum(g, es);
  rec.energy = energy(g, es);
  rec.min_phix = min_phix;
  rec.sobolev_h = sobolev_norm(g, es.h.values - 1.0, sigma);
  rec.sobolev_u = sobolev_norm(g, es.u, sigma + 1.0);
  rec.sigma = sigma;
  return rec;
}

double continuous_dependence_probe(const PeriodicGrid& g,
                                   const HeightField& h0, const Field& u0,
                                   double delta, double sigma,
                                   const IntegratorConfig& config) {
  if (delta == 0.0) return 0.0;
  if (!(delta > 0.0))
    fail(ErrorKind::config_error, "probe delta must be >= 0");

  // Fixed rough direction, unit H^{sigma+1} norm.
  const Field w = synthesize_rough_field(g, sigma + 1.0, 1.0, 9001);

  IntegratorConfig cfg = config;
  cfg.diag_sigma = sigma;
  if (cfg.dt <= 0.0)
    cfg.dt = default_time_step(g, u0, h0, cfg.cfl_safety);

  const FlowMapState base0{Field::Zero(g.n), u0};
  const FlowMapState pert0{Field::Zero(g.n), u0 + delta * w};
  const Trajectory base = integrate(g, base0, h0, cfg);
  const Trajectory pert = integrate(g, pert0, h0, cfg);
  if (base.termination != Termination::completed)
    fail(ErrorKind::monotonicity_loss, "probe base run terminated early");
  if (pert.termination != Termination::completed)
    fail(ErrorKind::monotonicity_loss, "probe perturbed run terminated early");

  double sup = 0.0;
  const size_t m = std::min(base.states.size(), pert.states.size());
  for (size_t i = 0; i < m; ++i) {
    const EulerianState a = reconstruct_eulerian(g, base.states[i], h0);
    const EulerianState b = reconstruct_eulerian(g, pert.states[i], h0);
    const double dh = sobolev_norm(g, a.h.values - b.h.values, sigma);
    const double du = sobolev_norm(g, a.u - b.u, sigma + 1.0);
    sup = std::max(sup, std::hypot(dh, du));
  }
  return sup / delta;
}

}  // namespace gnflow
