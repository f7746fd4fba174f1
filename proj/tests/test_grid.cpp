#include "doctest.h"

#include <cmath>
#include <random>

#include "gnflow/grid.hpp"
#include "test_support.hpp"

using namespace gnflow;
using gnflow::test::random_trig;

TEST_CASE("grid construction validates its invariants") {
  CHECK_THROWS_AS(PeriodicGrid(10.0, 8), Error);     // too small
  CHECK_THROWS_AS(PeriodicGrid(10.0, 17), Error);    // odd
  CHECK_THROWS_AS(PeriodicGrid(-1.0, 64), Error);    // negative length
  const PeriodicGrid g(10.0, 64);
  CHECK(g.dx == doctest::Approx(10.0 / 64).epsilon(1e-15));
  CHECK(g.nodes.size() == 64);
  CHECK(g.nodes(0) == 0.0);
  CHECK(g.nodes(63) == doctest::Approx(10.0 - g.dx).epsilon(1e-14));
}

TEST_CASE("spectral derivative is exact on pure modes") {
  const PeriodicGrid g(2.0 * M_PI, 64);
  const Field f = (2.0 * g.nodes).sin();
  const Field d = derivative(g, f, Scheme::spectral);
  const Field expected = 2.0 * (2.0 * g.nodes).cos();
  CHECK((d - expected).abs().maxCoeff() < 1e-12);

  for (int m : {1, 3, 7, 15}) {
    const Field c = (double(m) * g.nodes).cos();
    const Field dc = derivative(g, c, Scheme::spectral);
    const Field ex = -double(m) * (double(m) * g.nodes).sin();
    CHECK((dc - ex).abs().maxCoeff() < 1e-12 * m);
  }
}

TEST_CASE("derivative of a constant vanishes") {
  const PeriodicGrid g(7.5, 32);
  const Field f = Field::Constant(32, 3.25);
  CHECK(derivative(g, f, Scheme::centered2).abs().maxCoeff() == 0.0);
  CHECK(derivative(g, f, Scheme::spectral).abs().maxCoeff() < 1e-13);
}

TEST_CASE("centered2 error on sin matches the closed-form symbol") {
  const PeriodicGrid g(2.0 * M_PI, 64);
  const Field f = g.nodes.sin();
  const Field d = derivative(g, f, Scheme::centered2);
  const double max_err = (d - g.nodes.cos()).abs().maxCoeff();
  const double predicted = 1.0 - std::sin(g.dx) / g.dx;
  CHECK(max_err == doctest::Approx(predicted).epsilon(1e-10));
  CHECK(max_err == doctest::Approx(g.dx * g.dx / 6.0).epsilon(0.01));
}

TEST_CASE("quadrature of simple fields") {
  const PeriodicGrid g(10.0, 32);
  CHECK(quadrature(g, Field::Ones(32)) == doctest::Approx(10.0).epsilon(1e-14));

  const PeriodicGrid g2(2.0 * M_PI, 64);
  CHECK(std::abs(quadrature(g2, g2.nodes.sin())) < 1e-14);
}

TEST_CASE("quadrature of a windowed sech^2 matches the infinite integral") {
  const PeriodicGrid g(80.0, 2048);
  const double kappa = std::sqrt(3.0 * 0.2 / (4.0 * 1.2));
  Field f(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double s = 1.0 / std::cosh(kappa * (g.nodes(j) - 40.0));
    f(j) = s * s;
  }
  CHECK(std::abs(quadrature(g, f) - 2.0 / kappa) < 1e-10);
}

TEST_CASE("sobolev norm reference values") {
  const PeriodicGrid g(2.0 * M_PI, 128);
  CHECK(sobolev_norm(g, Field::Zero(g.n), 1.3) == 0.0);
  CHECK(sobolev_norm(g, g.nodes.sin(), 0.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  // (1 + k^2)^1 at k = 2; cross-checked against the direct quadrature of
  // f^2 + f_x^2.
  const Field f = (2.0 * g.nodes).sin();
  CHECK(sobolev_norm(g, f, 1.0) ==
        doctest::Approx(std::sqrt(5.0 * M_PI)).epsilon(1e-12));
  const Field fx = derivative(g, f, Scheme::spectral);
  const double direct = std::sqrt(quadrature(g, f.square() + fx.square()));
  CHECK(sobolev_norm(g, f, 1.0) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("rough field synthesis honors its contract") {
  const PeriodicGrid g(10.0, 256);
  CHECK(synthesize_rough_field(g, 0.6, 0.0, 7).abs().maxCoeff() == 0.0);

  const Field f = synthesize_rough_field(g, 0.6, 0.1, 7);
  CHECK(sobolev_norm(g, f, 0.6) == doctest::Approx(0.1).epsilon(1e-12));

  const Field f2 = synthesize_rough_field(g, 0.6, 0.1, 7);
  CHECK((f - f2).abs().maxCoeff() == 0.0);  // bit-identical

  const Field f3 = synthesize_rough_field(g, 0.6, 0.1, 8);
  CHECK((f - f3).abs().maxCoeff() > 0.0);

  CHECK_THROWS_AS(synthesize_rough_field(g, 0.0, 0.1, 7), Error);
  CHECK_THROWS_AS(synthesize_rough_field(g, -1.0, 0.1, 7), Error);
}

TEST_CASE("periodic derivatives have zero mean") {
  std::mt19937_64 rng(42);
  const PeriodicGrid g(13.0, 128);
  for (int rep = 0; rep < 5; ++rep) {
    const Field f = random_trig(g, rng, 20, 1.0);
    CHECK(std::abs(quadrature(g, derivative(g, f, Scheme::centered2))) < 1e-12);
    CHECK(std::abs(quadrature(g, derivative(g, f, Scheme::spectral))) < 1e-12);
  }
}

TEST_CASE("sobolev norm at sigma = 0 is the L2 norm") {
  std::mt19937_64 rng(3);
  const PeriodicGrid g(9.0, 128);
  for (int rep = 0; rep < 5; ++rep) {
    const Field f = random_trig(g, rng, 30, 2.0);
    const double n0 = sobolev_norm(g, f, 0.0);
    CHECK(n0 * n0 == doctest::Approx(quadrature(g, f.square())).epsilon(1e-10));
  }
}

TEST_CASE("sobolev norm is monotone in sigma") {
  std::mt19937_64 rng(11);
  const PeriodicGrid g(15.0, 128);
  const Field f = random_trig(g, rng, 25, 1.0) +
                  synthesize_rough_field(g, 0.8, 0.3, 5);
  double prev = sobolev_norm(g, f, -1.0);
  for (double sigma : {-0.5, 0.0, 0.3, 0.6, 1.0, 2.0}) {
    const double cur = sobolev_norm(g, f, sigma);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("dealias keeps low modes and removes the top third") {
  const PeriodicGrid g(2.0 * M_PI, 96);
  const Field low = (3.0 * g.nodes).sin();
  CHECK((dealias(g, low) - low).abs().maxCoeff() < 1e-13);
  const Field high = (40.0 * g.nodes).cos();  // above 96/3 = 32
  CHECK(dealias(g, high).abs().maxCoeff() < 1e-13);
}
