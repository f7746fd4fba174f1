#include "gnflow/flow_map.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <vector>

namespace gnflow {

namespace {

// Fourth-order centered slope estimates with Fritsch-Carlson limiting on
// data-monotone windows. A cell is treated as monotone when its secant and
// both neighboring secants share a sign; on such cells the endpoint slopes
// are sign-matched and kept inside the [0, 3] secant box, which makes the
// interpolant comonotone (hence range-bounded) there. Cells bracketing a
// data extremum are exempt — forcing comonotonicity across them would flatten
// every mid-cell extremum by |f''| dx^2 / 8, which is exactly the error this
// module cannot afford — but their slopes stay capped at 3x the larger
// neighboring secant, so any excursion beyond the data range is
// second-order small in the local variation.
Field limited_slopes(const PeriodicGrid& g, const Field& f,
                     const Field& secants) {
  const int n = g.n;
  Field m(n);
  const double w = 1.0 / (12.0 * g.dx);
  for (int j = 0; j < n; ++j) {
    const int jp = (j + 1) % n, jpp = (j + 2) % n;
    const int jm = (j + n - 1) % n, jmm = (j + n - 2) % n;
    m(j) = (-f(jpp) + 8.0 * f(jp) - 8.0 * f(jm) + f(jmm)) * w;
  }
  Field limited(n);
  for (int j = 0; j < n; ++j) {
    const double dmm = secants((j + n - 2) % n);
    const double dl = secants((j + n - 1) % n);
    const double dr = secants(j);
    const double drr = secants((j + 1) % n);
    const bool left_mono = dmm * dl > 0.0 && dl * dr > 0.0;
    const bool right_mono = dl * dr > 0.0 && dr * drr > 0.0;
    double v = m(j);
    if (left_mono || right_mono) {
      if (v * dr <= 0.0) {
        v = 0.0;
      } else {
        double cap = std::numeric_limits<double>::infinity();
        if (left_mono) cap = std::min(cap, 3.0 * std::abs(dl));
        if (right_mono) cap = std::min(cap, 3.0 * std::abs(dr));
        v = std::copysign(std::min(std::abs(v), cap), v);
      }
    } else {
      const double cap = 3.0 * std::max(std::abs(dl), std::abs(dr));
      v = std::copysign(std::min(std::abs(v), cap), v);
    }
    limited(j) = v;
  }
  return limited;
}

Field cell_secants(const PeriodicGrid& g, const Field& f) {
  const int n = g.n;
  Field d(n);
  d.head(n - 1) = (f.tail(n - 1) - f.head(n - 1)) / g.dx;
  d(n - 1) = (f(0) - f(n - 1)) / g.dx;
  return d;
}

// Periodic cubic Hermite table. For non-periodic nodal data (the flow-map
// lift) the caller supplies the wrap jump added to the right endpoint of
// the last cell.
struct HermiteTable {
  const PeriodicGrid& g;
  Field values;
  Field slopes;
  double wrap_jump = 0.0;

  double left(int j) const { return values(j); }
  double right(int j) const {
    return j + 1 < g.n ? values(j + 1) : values(0) + wrap_jump;
  }
  double slope_right(int j) const {
    return j + 1 < g.n ? slopes(j + 1) : slopes(0);
  }

  double eval(int j, double t) const {
    const double fl = left(j), fr = right(j);
    const double ml = g.dx * slopes(j), mr = g.dx * slope_right(j);
    const double omt = 1.0 - t;
    const double h00 = (1.0 + 2.0 * t) * omt * omt;
    const double h10 = t * omt * omt;
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return fl * h00 + ml * h10 + fr * h01 + mr * h11;
  }

  // d/dt of eval.
  double eval_dt(int j, double t) const {
    const double fl = left(j), fr = right(j);
    const double ml = g.dx * slopes(j), mr = g.dx * slope_right(j);
    const double h00p = 6.0 * t * t - 6.0 * t;
    const double h10p = 3.0 * t * t - 4.0 * t + 1.0;
    const double h01p = -6.0 * t * t + 6.0 * t;
    const double h11p = 3.0 * t * t - 2.0 * t;
    return fl * h00p + ml * h10p + fr * h01p + mr * h11p;
  }
};

HermiteTable periodic_table(const PeriodicGrid& g, const Field& f) {
  const Field d = cell_secants(g, f);
  return {g, f, limited_slopes(g, f, d), 0.0};
}

// Table for phi = id + psi: nodal values x_j + psi_j, slopes 1 + slopes(psi)
// limited against the phi secants, wrap jump L.
HermiteTable diffeo_table(const PeriodicGrid& g, const Field& psi) {
  Field phi = g.nodes + psi;
  Field d = cell_secants(g, psi) + 1.0;
  // Slopes of phi: symmetric differences of the identity are exactly 1, so
  // estimate on psi and shift; then limit against the phi secants.
  const int n = g.n;
  Field raw(n);
  const double w = 1.0 / (12.0 * g.dx);
  for (int j = 0; j < n; ++j) {
    const int jp = (j + 1) % n, jpp = (j + 2) % n;
    const int jm = (j + n - 1) % n, jmm = (j + n - 2) % n;
    raw(j) = 1.0 + (-psi(jpp) + 8.0 * psi(jp) - 8.0 * psi(jm) + psi(jmm)) * w;
  }
  for (int j = 0; j < n; ++j) {
    const double dl = d((j + n - 1) % n);
    const double dr = d(j);
    if (dl * dr <= 0.0 || raw(j) * dr <= 0.0)
      raw(j) = 0.0;
    else
      raw(j) = std::copysign(
          std::min(std::abs(raw(j)), 3.0 * std::min(std::abs(dl), std::abs(dr))),
          dr);
  }
  return {g, std::move(phi), std::move(raw), g.length};
}

struct CellPoint {
  int cell;
  double t;
  double shift;  // multiple of L removed to land in [0, L)
};

CellPoint locate(const PeriodicGrid& g, double p) {
  const double shift = g.length * std::floor(p / g.length);
  double w = p - shift;
  if (w >= g.length) w = 0.0;  // fp edge
  double s = w / g.dx;
  int j = int(std::floor(s));
  double t = s - j;
  if (j >= g.n) {
    j = g.n - 1;
    t = 1.0;
  }
  if (t < 5e-14) t = 0.0;
  if (1.0 - t < 5e-14) {
    j = (j + 1) % g.n;
    t = 0.0;
  }
  return {j, t, shift};
}

// Solve table.eval(j, t) = target for t in [0, 1]; the cell is monotone
// nondecreasing by construction. Hybrid Newton/bisection.
double invert_cell(const HermiteTable& tab, int j, double target, double tol) {
  double lo = 0.0, hi = 1.0;
  double flo = tab.left(j) - target;
  double t = (tab.right(j) > tab.left(j))
                 ? -flo / (tab.right(j) - tab.left(j))
                 : 0.5;
  t = std::clamp(t, 0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    const double r = tab.eval(j, t) - target;
    if (std::abs(r) <= tol) return t;
    if (r > 0.0)
      hi = t;
    else
      lo = t;
    const double dr = tab.eval_dt(j, t);
    double next = (dr > 0.0) ? t - r / dr : -1.0;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return t;  // bisection has shrunk the bracket below any practical tol
}

}  // namespace

Field compose(const PeriodicGrid& g, const Field& f, const Field& points) {
  if (f.size() != g.n) fail(ErrorKind::config_error, "field/grid size mismatch");
  const HermiteTable tab = periodic_table(g, f);
  Field out(points.size());
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    const CellPoint cp = locate(g, points(i));
    out(i) = tab.eval(cp.cell, cp.t);
  }
  return out;
}

Field evaluate_diffeo(const PeriodicGrid& g, const Field& psi,
                      const Field& points) {
  if (psi.size() != g.n) fail(ErrorKind::config_error, "psi/grid size mismatch");
  const HermiteTable tab = diffeo_table(g, psi);
  Field out(points.size());
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    const CellPoint cp = locate(g, points(i));
    out(i) = tab.eval(cp.cell, cp.t) + cp.shift;
  }
  return out;
}

Field invert_diffeo(const PeriodicGrid& g, const Field& psi,
                    const Field& queries) {
  if (psi.size() != g.n) fail(ErrorKind::config_error, "psi/grid size mismatch");
  const HermiteTable tab = diffeo_table(g, psi);
  const Field d = cell_secants(g, psi) + 1.0;
  if (!(d.minCoeff() > kMonotonicityFloor))
    fail(ErrorKind::monotonicity_loss,
         "flow map is not strictly increasing at the nodes");

  const double phi0 = tab.values(0);
  const double tol = 1e-13 * g.length;
  Field out(queries.size());
  for (Eigen::Index i = 0; i < queries.size(); ++i) {
    const double y = queries(i);
    const double p = std::floor((y - phi0) / g.length);
    const double yr = y - p * g.length;  // in [phi0, phi0 + L)
    // Largest cell start at or below yr.
    const double* begin = tab.values.data();
    const double* end = begin + g.n;
    int j = int(std::upper_bound(begin, end, yr) - begin) - 1;
    if (j < 0) j = 0;  // yr == phi0 within rounding
    const double t = invert_cell(tab, j, yr, tol);
    out(i) = g.nodes(j) + t * g.dx + p * g.length;
  }
  return out;
}

EulerianState reconstruct_eulerian(const PeriodicGrid& g,
                                   const FlowMapState& state,
                                   const HeightField& h0) {
  const LagrangianCache cache = build_lagrangian_cache(g, state.psi, h0);
  const Field labels = invert_diffeo(g, state.psi, g.nodes);
  Field h = compose(g, cache.eta, labels);
  Field u = compose(g, state.v, labels);
  if (!(h.minCoeff() > 0.0))
    fail(ErrorKind::ill_posed, "reconstructed height lost positivity");
  return {{std::move(h)}, std::move(u)};
}

}  // namespace gnflow
