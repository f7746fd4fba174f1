#include "doctest.h"

#include <cmath>

#include "gnflow/diagnostics.hpp"
#include "gnflow/integrate.hpp"
#include "test_support.hpp"

using namespace gnflow;

TEST_CASE("rk4 kernel: scalar exponential growth") {
  const auto rhs = [](double y) { return y; };
  const double y1 = rk4_step(rhs, 1.0, 0.1);
  // truncated exponential series through dt^4/24
  CHECK(y1 == doctest::Approx(1.1051708333333333).epsilon(1e-14));
  const double err = std::abs(y1 - std::exp(0.1));
  CHECK(err > 8.0e-8);
  CHECK(err < 9.0e-8);
}

TEST_CASE("rk4 kernel: harmonic oscillator over one unit of time") {
  using State = Eigen::Array2d;
  const auto rhs = [](const State& s) { return State(s(1), -s(0)); };
  State y(1.0, 0.0);
  for (int i = 0; i < 10; ++i) y = rk4_step(rhs, y, 0.1);
  CHECK(std::abs(y(0) - std::cos(1.0)) < 1e-7);
  CHECK(std::abs(y(1) + std::sin(1.0)) < 1e-7);
}

TEST_CASE("equilibrium step leaves the state bitwise unchanged") {
  const PeriodicGrid g(10.0, 64);
  const HeightField h0{Field::Ones(g.n)};
  const FlowMapState s{Field::Zero(g.n), Field::Zero(g.n)};
  const FlowMapState next = step_rk4(g, s, 0.05, h0);
  CHECK((next.psi == s.psi).all());
  CHECK((next.v == s.v).all());
}

TEST_CASE("zero-duration integration returns a single entry") {
  const PeriodicGrid g(10.0, 64);
  IntegratorConfig ic;
  ic.T = 0.0;
  const Trajectory tr = integrate(g, {Field::Zero(g.n), Field::Zero(g.n)},
                                  {Field::Ones(g.n)}, ic);
  CHECK(tr.times.size() == 1);
  CHECK(tr.states.size() == 1);
  CHECK(tr.diagnostics.size() == 1);
  CHECK(tr.termination == Termination::completed);
}

TEST_CASE("equilibrium trajectory is constant and completes") {
  const PeriodicGrid g(10.0, 64);
  IntegratorConfig ic;
  ic.T = 10.0;
  ic.record_stride = 7;
  const Trajectory tr = integrate(g, {Field::Zero(g.n), Field::Zero(g.n)},
                                  {Field::Ones(g.n)}, ic);
  CHECK(tr.termination == Termination::completed);
  CHECK(tr.times.back() == doctest::Approx(10.0).epsilon(1e-14));
  for (const FlowMapState& s : tr.states) {
    CHECK(s.psi.abs().maxCoeff() == 0.0);
    CHECK(s.v.abs().maxCoeff() == 0.0);
  }
  for (size_t i = 1; i < tr.times.size(); ++i)
    CHECK(tr.times[i] > tr.times[i - 1]);
  CHECK(tr.states.size() == tr.times.size());
  CHECK(tr.diagnostics.size() == tr.times.size());
}

TEST_CASE("fixed-step integration is bit-reproducible") {
  const PeriodicGrid g(80.0, 128);
  const EulerianState s0 = solitary_wave(0.2, g);
  IntegratorConfig ic;
  ic.T = 0.5;
  const FlowMapState f0{Field::Zero(g.n), s0.u};
  const Trajectory a = integrate(g, f0, s0.h, ic);
  const Trajectory b = integrate(g, f0, s0.h, ic);
  REQUIRE(a.states.size() == b.states.size());
  CHECK((a.states.back().psi == b.states.back().psi).all());
  CHECK((a.states.back().v == b.states.back().v).all());
}

TEST_CASE("compressive data terminates with monotonicity loss, guard intact") {
  const PeriodicGrid g(2.0 * M_PI, 64);
  // dpsi/dt = v = -2 sin x drives phi_x = 1 - 2 t cos x through zero near
  // t = 0.5 at x = 0.
  const FlowMapState f0{Field::Zero(g.n), Field(-2.0 * g.nodes.sin())};
  IntegratorConfig ic;
  ic.T = 2.0;
  ic.record_stride = 1;
  const Trajectory tr = integrate(g, f0, {Field::Ones(g.n)}, ic);
  CHECK(tr.termination == Termination::monotonicity_loss);
  CHECK(tr.times.back() < 2.0);
  for (const DiagnosticsRecord& r : tr.diagnostics)
    CHECK(r.min_phix > kMonotonicityFloor);
}

TEST_CASE("step budget exhaustion is a typed termination") {
  const PeriodicGrid g(80.0, 128);
  const EulerianState s0 = solitary_wave(0.2, g);
  IntegratorConfig ic;
  ic.T = 10.0;
  ic.max_steps = 3;
  const Trajectory tr =
      integrate(g, {Field::Zero(g.n), s0.u}, s0.h, ic);
  CHECK(tr.termination == Termination::step_rejected);
}

TEST_CASE("invalid inputs are rejected as configuration errors") {
  const PeriodicGrid g(10.0, 64);
  IntegratorConfig ic;
  ic.T = -1.0;
  CHECK_THROWS_AS(integrate(g, {Field::Zero(g.n), Field::Zero(g.n)},
                            {Field::Ones(g.n)}, ic),
                  Error);
  IntegratorConfig ic2;
  ic2.cfl_safety = 1.5;
  CHECK_THROWS_AS(integrate(g, {Field::Zero(g.n), Field::Zero(g.n)},
                            {Field::Ones(g.n)}, ic2),
                  Error);
  IntegratorConfig ic3;
  Field bad = Field::Zero(g.n);
  bad(5) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(integrate(g, {bad, Field::Zero(g.n)}, {Field::Ones(g.n)}, ic3),
                  Error);
}

TEST_CASE("default time step follows the gravity-wave heuristic") {
  const PeriodicGrid g(80.0, 128);
  const EulerianState s0 = solitary_wave(0.2, g);
  const double dt = default_time_step(g, s0.u, s0.h, 0.5);
  const double expected =
      0.5 * g.dx / (s0.u.abs().maxCoeff() + std::sqrt(1.0 + 0.2));
  CHECK(dt == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("recorded trajectory respects the output stride") {
  const PeriodicGrid g(80.0, 128);
  const EulerianState s0 = solitary_wave(0.1, g);
  IntegratorConfig ic;
  ic.T = 0.3;
  ic.dt = 0.01;
  ic.record_stride = 10;
  const Trajectory tr = integrate(g, {Field::Zero(g.n), s0.u}, s0.h, ic);
  // 30 steps: records at 0, 10, 20, 30
  CHECK(tr.times.size() == 4);
  CHECK(tr.times.back() == doctest::Approx(0.3).epsilon(1e-12));
}
