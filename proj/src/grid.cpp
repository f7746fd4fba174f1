#include "gnflow/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <random>
#include <string>

namespace gnflow {

namespace {

// One FFT object per thread; Eigen::FFT caches plans per transform size.
Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

Spectrum fft_forward(const Field& f) {
  Eigen::VectorXcd out;
  Eigen::VectorXd in = f.matrix();
  fft_engine().fwd(out, in);
  return out.array();
}

// Inverse with the 1/n scaling; input must be conjugate-symmetric.
Field fft_inverse_real(const Spectrum& c) {
  Eigen::VectorXd out;
  Eigen::VectorXcd in = c.matrix();
  fft_engine().inv(out, in);
  return out.array();
}

}  // namespace

PeriodicGrid::PeriodicGrid(double length_, int n_)
    : length(length_), n(n_), dx(length_ / n_) {
  if (!(length > 0.0) || !std::isfinite(length))
    fail(ErrorKind::config_error, "grid length must be positive and finite");
  if (n < 16 || n % 2 != 0)
    fail(ErrorKind::config_error,
         "grid size must be even and >= 16, got " + std::to_string(n));
  nodes = dx * Field::LinSpaced(n, 0.0, double(n - 1));
}

Field wavenumbers(const PeriodicGrid& g) {
  Field k(g.n);
  const double base = 2.0 * M_PI / g.length;
  for (int m = 0; m < g.n; ++m) {
    const int signed_m = (m <= g.n / 2) ? m : m - g.n;
    k(m) = base * signed_m;
  }
  return k;
}

Field derivative(const PeriodicGrid& g, const Field& f, Scheme scheme) {
  const int n = g.n;
  if (f.size() != n) fail(ErrorKind::config_error, "field/grid size mismatch");
  if (scheme == Scheme::centered2) {
    Field d(n);
    const double inv2dx = 1.0 / (2.0 * g.dx);
    d.segment(1, n - 2) = (f.tail(n - 2) - f.head(n - 2)) * inv2dx;
    d(0) = (f(1) - f(n - 1)) * inv2dx;
    d(n - 1) = (f(0) - f(n - 2)) * inv2dx;
    return d;
  }
  Spectrum c = fft_forward(f);
  const Field k = wavenumbers(g);
  for (int m = 0; m < n; ++m)
    c(m) *= std::complex<double>(0.0, k(m));
  c(n / 2) = 0.0;  // odd-derivative symbol has no consistent Nyquist value
  return fft_inverse_real(c);
}

double sobolev_norm(const PeriodicGrid& g, const Field& f, double sigma) {
  const Spectrum c = fft_forward(f);
  const Field k = wavenumbers(g);
  double acc = 0.0;
  for (int m = 0; m < g.n; ++m)
    acc += std::pow(1.0 + k(m) * k(m), sigma) * std::norm(c(m));
  return std::sqrt(acc * g.dx / g.n);
}

Field synthesize_rough_field(const PeriodicGrid& g, double sigma,
                             double amplitude, std::uint64_t seed) {
  if (!(sigma > 0.0))
    fail(ErrorKind::config_error, "rough field regularity must be positive");
  if (amplitude < 0.0)
    fail(ErrorKind::config_error, "rough field amplitude must be >= 0");
  if (amplitude == 0.0) return Field::Zero(g.n);

  std::mt19937_64 rng(seed);
  const Field k = wavenumbers(g);
  Spectrum c = Spectrum::Zero(g.n);
  const double decay = -(sigma + 0.55) / 2.0;
  for (int m = 1; m < g.n / 2; ++m) {
    // Uniform phase in [0, 2 pi) built from the raw engine output so the
    // result is bit-identical across standard libraries.
    const double unit = double(rng() >> 11) * 0x1.0p-53;
    const double theta = 2.0 * M_PI * unit;
    const double mag = std::pow(1.0 + k(m) * k(m), decay);
    c(m) = std::polar(mag, theta);
    c(g.n - m) = std::conj(c(m));
  }
  Field f = fft_inverse_real(c);
  const double norm = sobolev_norm(g, f, sigma);
  return f * (amplitude / norm);
}

Field dealias(const PeriodicGrid& g, const Field& f) {
  Spectrum c = fft_forward(f);
  const int cutoff = g.n / 3;
  for (int m = 0; m < g.n; ++m) {
    const int signed_m = (m <= g.n / 2) ? m : m - g.n;
    if (std::abs(signed_m) > cutoff) c(m) = 0.0;
  }
  return fft_inverse_real(c);
}

}  // namespace gnflow
