#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "gnflow/diagnostics.hpp"
#include "gnflow/flow_map.hpp"
#include "test_support.hpp"

using namespace gnflow;
using gnflow::test::random_trig;

TEST_CASE("compose reproduces nodal values") {
  std::mt19937_64 rng(2);
  const PeriodicGrid g(11.0, 64);
  const Field f = random_trig(g, rng, 10, 2.0);
  const Field at_nodes = compose(g, f, g.nodes);
  CHECK((at_nodes - f).abs().maxCoeff() < 1e-13);
}

TEST_CASE("compose of a constant is that constant everywhere") {
  const PeriodicGrid g(6.0, 32);
  const Field f = Field::Constant(g.n, -2.5);
  Field pts(5);
  pts << 0.13, 1.7, 5.99, -3.2, 17.0;
  const Field out = compose(g, f, pts);
  CHECK((out + 2.5).abs().maxCoeff() < 1e-14);
}

TEST_CASE("compose of sin converges at fourth order at arbitrary points") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  Field pts(500);
  for (int i = 0; i < 500; ++i) pts(i) = unif(rng);

  std::vector<double> errors, factors;
  for (int n : {32, 64, 128, 256}) {
    const PeriodicGrid g(2.0 * M_PI, n);
    const Field f = g.nodes.sin();
    const Field vals = compose(g, f, pts);
    double err = 0.0;
    for (int i = 0; i < 500; ++i)
      err = std::max(err, std::abs(vals(i) - std::sin(pts(i))));
    errors.push_back(err);
    factors.push_back(n / 32.0);
  }
  const double rate = convergence_rate(errors, factors);
  CHECK(rate > 3.5);
  CHECK(errors.back() < 1e-8);
}

TEST_CASE("inversion of the identity and of constant shifts") {
  const PeriodicGrid g(9.0, 64);
  Field queries(4);
  queries << 0.4, 3.33, 8.9, -1.2;

  const Field id_back = invert_diffeo(g, Field::Zero(g.n), queries);
  CHECK((id_back - queries).abs().maxCoeff() < 1e-12 * g.length);

  const Field shifted = invert_diffeo(g, Field::Constant(g.n, 0.75), queries);
  CHECK((shifted - (queries - 0.75)).abs().maxCoeff() < 1e-12 * g.length);
}

TEST_CASE("inversion round-trips a forward evaluation") {
  const PeriodicGrid g(2.0 * M_PI, 1024);
  const Field psi = 0.3 * g.nodes.sin();
  // forward value from the closed form; the interpolant is 4th-order close
  Field y(1);
  y << 1.0 + 0.3 * std::sin(1.0);
  const Field x = invert_diffeo(g, psi, y);
  CHECK(std::abs(x(0) - 1.0) < 1e-10);
}

TEST_CASE("inversion satisfies its residual contract on random diffeos") {
  std::mt19937_64 rng(31);
  const PeriodicGrid g(14.0, 128);
  std::uniform_real_distribution<double> unif(-30.0, 30.0);
  for (int rep = 0; rep < 3; ++rep) {
    Field psi = random_trig(g, rng, 6, 1.0);
    const Field dpsi = (psi.tail(g.n - 1) - psi.head(g.n - 1));
    // scale so nodal slopes stay well above the guard
    const double worst = dpsi.abs().maxCoeff() / g.dx;
    psi *= 0.6 / std::max(worst, 1e-12);

    Field queries(64);
    for (int i = 0; i < 64; ++i) queries(i) = unif(rng);
    const Field x = invert_diffeo(g, psi, queries);
    const Field fwd = evaluate_diffeo(g, psi, x);
    CHECK((fwd - queries).abs().maxCoeff() <= 1e-12 * g.length);
  }
}

TEST_CASE("inversion rejects a non-monotone nodal map") {
  const PeriodicGrid g(2.0 * M_PI, 64);
  const Field psi = 2.0 * g.nodes.sin();  // phi_x dips far below zero
  Field q(1);
  q << 1.0;
  CHECK_THROWS_AS(invert_diffeo(g, psi, q), Error);
  try {
    invert_diffeo(g, psi, q);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::monotonicity_loss);
  }
}

TEST_CASE("reconstruction at the identity returns the data exactly") {
  std::mt19937_64 rng(7);
  const PeriodicGrid g(20.0, 128);
  const HeightField h0{1.0 + 0.3 * (-(g.nodes - 10.0).square() / 4.0).exp()};
  const Field u0 = random_trig(g, rng, 6, 0.5);
  const EulerianState s =
      reconstruct_eulerian(g, {Field::Zero(g.n), u0}, h0);
  CHECK((s.h.values - h0.values).abs().maxCoeff() < 1e-13);
  CHECK((s.u - u0).abs().maxCoeff() < 1e-13);
}

TEST_CASE("reconstruction under a constant shift is a translation") {
  const PeriodicGrid g(20.0, 256);
  const double c = 3.0 * g.dx;  // generic non-grid-multiple shift below
  const HeightField h0{1.0 + 0.3 * (-(g.nodes - 10.0).square() / 4.0).exp()};
  const Field u0 = 0.2 * (2.0 * M_PI * g.nodes / g.length).sin();
  const double shift = c + 0.37 * g.dx;
  const EulerianState s =
      reconstruct_eulerian(g, {Field::Constant(g.n, shift), u0}, h0);
  // expected: fields translated by +shift, up to interpolation error
  double eh = 0.0, eu = 0.0;
  for (int j = 0; j < g.n; ++j) {
    double xs = g.nodes(j) - shift;
    xs -= g.length * std::floor(xs / g.length);
    const double he = 1.0 + 0.3 * std::exp(-(xs - 10.0) * (xs - 10.0) / 4.0);
    const double ue = 0.2 * std::sin(2.0 * M_PI * xs / g.length);
    eh = std::max(eh, std::abs(s.h.values(j) - he));
    eu = std::max(eu, std::abs(s.u(j) - ue));
  }
  CHECK(eh < 1e-5);
  CHECK(eu < 1e-5);
}

TEST_CASE("reconstructed mass shadows the label-side quadrature") {
  // quadrature(h0 - phi_x) is an algebraic invariant (the centered sum of
  // psi telescopes); the reconstructed mass agrees with it at O(dx^2).
  std::vector<double> errors, factors;
  for (int n : {128, 256, 512}) {
    const PeriodicGrid g(20.0, n);
    const HeightField h0{1.0 + 0.3 * (-(g.nodes - 10.0).square() / 4.0).exp()};
    const Field psi = 0.2 * (2.0 * M_PI * g.nodes / g.length).sin();
    const Field phix = 1.0 + derivative(g, psi, Scheme::centered2);
    const double label_side = quadrature(g, h0.values - phix);
    const EulerianState s = reconstruct_eulerian(g, {psi, Field::Zero(g.n)}, h0);
    const double eulerian_side = quadrature(g, s.h.values - 1.0);
    errors.push_back(std::abs(label_side - eulerian_side));
    factors.push_back(n / 128.0);
    // the label-side quantity itself equals quadrature(h0 - 1) exactly
    CHECK(std::abs(label_side - quadrature(g, h0.values - 1.0)) < 1e-12);
  }
  CHECK(convergence_rate(errors, factors) > 1.8);
}

TEST_CASE("reconstruction keeps a positive height positive") {
  std::mt19937_64 rng(19);
  const PeriodicGrid g(16.0, 128);
  for (int rep = 0; rep < 5; ++rep) {
    const HeightField h0{1.0 + random_trig(g, rng, 12, 0.6)};
    REQUIRE(h0.values.minCoeff() > 0.0);
    Field psi = random_trig(g, rng, 5, 1.0);
    const Field d = psi.tail(g.n - 1) - psi.head(g.n - 1);
    psi *= 0.5 * g.dx / std::max(d.abs().maxCoeff(), 1e-12);
    const EulerianState s = reconstruct_eulerian(g, {psi, Field::Zero(g.n)}, h0);
    CHECK(s.h.values.minCoeff() > 0.0);
  }
}

TEST_CASE("reconstruction error decreases at least at second order") {
  // pure-translation scenario measured against the closed form
  std::vector<double> errors, factors;
  for (int n : {128, 256, 512}) {
    const PeriodicGrid g(20.0, n);
    const HeightField h0{1.0 + 0.3 * (-(g.nodes - 10.0).square()).exp()};
    const Field psi = Field::Constant(g.n, 0.41);
    const EulerianState s = reconstruct_eulerian(g, {psi, Field::Zero(g.n)}, h0);
    double eh = 0.0;
    for (int j = 0; j < g.n; ++j) {
      double xs = g.nodes(j) - 0.41;
      const double he = 1.0 + 0.3 * std::exp(-(xs - 10.0) * (xs - 10.0));
      eh = std::max(eh, std::abs(s.h.values(j) - he));
    }
    errors.push_back(eh);
    factors.push_back(n / 128.0);
  }
  CHECK(convergence_rate(errors, factors) > 2.0);
}
