#include "gnflow/elliptic.hpp"

#include <cmath>

namespace gnflow {

void require_valid(const PeriodicGrid& g, const HeightField& h) {
  if (h.values.size() != g.n)
    fail(ErrorKind::config_error, "height field/grid size mismatch");
  if (!h.values.allFinite() || h.values.minCoeff() <= 0.0)
    fail(ErrorKind::ill_posed, "height field must be strictly positive");
}

namespace {

// Half-point flux coefficients: w_j couples u_j and u_{j+1}, already
// divided by dx^2.
Field half_point_weights(const PeriodicGrid& g, const Field& b) {
  const int n = g.n;
  Field w(n);
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  w.head(n - 1) = 0.5 * (b.head(n - 1) + b.tail(n - 1)) * inv_dx2;
  w(n - 1) = 0.5 * (b(n - 1) + b(0)) * inv_dx2;
  return w;
}

// Tridiagonal solve, no pivoting (valid: rows are strictly diagonally
// dominant for elliptic data). diag/lower/upper are overwritten-free.
Eigen::ArrayXd thomas_solve(const Field& diag, const Field& off,
                            const Field& rhs) {
  const int n = int(diag.size());
  Eigen::ArrayXd c(n), d(n);
  c(0) = off(0) / diag(0);
  d(0) = rhs(0) / diag(0);
  for (int i = 1; i < n; ++i) {
    const double denom = diag(i) - off(i - 1) * c(i - 1);
    c(i) = (i < n - 1) ? off(i) / denom : 0.0;
    d(i) = (rhs(i) - off(i - 1) * d(i - 1)) / denom;
  }
  Eigen::ArrayXd x(n);
  x(n - 1) = d(n - 1);
  for (int i = n - 2; i >= 0; --i) x(i) = d(i) - c(i) * x(i + 1);
  return x;
}

}  // namespace

Field apply_elliptic(const PeriodicGrid& g, const EllipticProblem& p,
                     const Field& u) {
  const int n = g.n;
  if (u.size() != n || p.a.size() != n || p.b.size() != n)
    fail(ErrorKind::config_error, "elliptic field/grid size mismatch");
  const Field w = half_point_weights(g, p.b);
  Field out(n);
  for (int j = 0; j < n; ++j) {
    const int jp = (j + 1 == n) ? 0 : j + 1;
    const int jm = (j == 0) ? n - 1 : j - 1;
    out(j) = p.a(j) * u(j) - (w(j) * (u(jp) - u(j)) - w(jm) * (u(j) - u(jm)));
  }
  return out;
}

Field solve_elliptic(const PeriodicGrid& g, const EllipticProblem& p,
                     const Field& f) {
  const int n = g.n;
  if (f.size() != n || p.a.size() != n || p.b.size() != n)
    fail(ErrorKind::config_error, "elliptic field/grid size mismatch");
  if (!p.a.allFinite() || !p.b.allFinite() || p.a.minCoeff() <= 0.0 ||
      p.b.minCoeff() <= 0.0)
    fail(ErrorKind::ill_posed, "elliptic coefficients must be positive");

  const Field w = half_point_weights(g, p.b);
  Field diag(n), off(n - 1);
  for (int j = 0; j < n; ++j) {
    const int jm = (j == 0) ? n - 1 : j - 1;
    diag(j) = p.a(j) + w(j) + w(jm);
  }
  for (int j = 0; j < n - 1; ++j) off(j) = -w(j);
  const double corner = -w(n - 1);  // couples u_0 and u_{n-1}

  // Sherman-Morrison: A = T + gamma e_0 e_0^T-style rank-1 update folding
  // the periodic corner into a plain tridiagonal T'.
  const double gamma = -diag(0);
  Field diag_mod = diag;
  diag_mod(0) -= gamma;
  diag_mod(n - 1) -= corner * corner / gamma;

  const Eigen::ArrayXd y = thomas_solve(diag_mod, off, f);
  Field unit = Field::Zero(n);
  unit(0) = gamma;
  unit(n - 1) = corner;
  const Eigen::ArrayXd z = thomas_solve(diag_mod, off, unit);

  const double vy = y(0) + (corner / gamma) * y(n - 1);
  const double vz = z(0) + (corner / gamma) * z(n - 1);
  Field u = y - (vy / (1.0 + vz)) * z;

  const double fnorm = std::sqrt(f.square().sum());
  const double rnorm =
      std::sqrt((apply_elliptic(g, p, u) - f).square().sum());
  if (!(rnorm <= 1e-10 * fnorm))
    fail(ErrorKind::solver_failure,
         "elliptic residual " + std::to_string(rnorm) + " exceeds 1e-10 * " +
             std::to_string(fnorm));
  return u;
}

Field apply_gn_operator(const PeriodicGrid& g, const HeightField& h,
                        const Field& u) {
  require_valid(g, h);
  return apply_elliptic(g, {3.0 * h.values, h.values.cube()}, u);
}

Field solve_gn_operator(const PeriodicGrid& g, const HeightField& h,
                        const Field& f) {
  require_valid(g, h);
  return solve_elliptic(g, {3.0 * h.values, h.values.cube()}, f);
}

}  // namespace gnflow
