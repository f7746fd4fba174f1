#pragma once

// Periodic grid over [0, L) plus the discrete calculus everything else is
// built from: finite-difference and Fourier derivatives, quadrature, Sobolev
// norms, and a rough-field synthesizer for low-regularity experiments.
//
// Fourier convention: the forward DFT is unnormalized,
//     c_m = sum_j f_j exp(-i 2 pi j m / n),
// and dx * c_m approximates the continuum Fourier integral of f at the
// signed wavenumber k_m = 2 pi m~ / L  (m~ = m for m < n/2, m - n above).
// With that scaling the discrete Parseval identity reads
//     (dx / n) * sum_m |c_m|^2 = dx * sum_j f_j^2 = quadrature(f^2),
// which fixes the normalization of sobolev_norm so that sigma = 0 reproduces
// the L2 norm computed by quadrature.

#include <Eigen/Dense>

#include <cstdint>

#include "gnflow/errors.hpp"

namespace gnflow {

using Field = Eigen::ArrayXd;
using Spectrum = Eigen::ArrayXcd;

enum class Scheme {
  spectral,   // exact for band-limited fields; Nyquist mode dropped
  centered2,  // (f_{j+1} - f_{j-1}) / (2 dx) with periodic wraparound
};

/// Uniform periodic grid: x_j = j * dx, j = 0..n-1, dx = length / n.
/// Immutable after construction; n must be even and at least 16
/// (powers of two keep the transforms fast).
struct PeriodicGrid {
  PeriodicGrid(double length, int n);

  double length;
  int n;
  double dx;
  Field nodes;
};

/// Discrete d/dx of a periodic sample field.
Field derivative(const PeriodicGrid& g, const Field& f, Scheme scheme);

/// Rectangle (= trapezoid, by periodicity) rule: dx * sum_j f_j.
template <class Derived>
double quadrature(const PeriodicGrid& g, const Eigen::DenseBase<Derived>& f) {
  return g.dx * f.sum();
}

/// Signed wavenumbers k_m = 2 pi m~ / L in DFT bin order.
Field wavenumbers(const PeriodicGrid& g);

/// Discrete H^sigma norm: ((dx/n) sum_m (1 + k_m^2)^sigma |c_m|^2)^{1/2}.
/// sigma = 0 reproduces quadrature(f^2)^{1/2}; sigma may be negative.
double sobolev_norm(const PeriodicGrid& g, const Field& f, double sigma);

/// Random-phase field with |f_k| ~ (1 + k^2)^{-(sigma + 0.55)/2}, rescaled so
/// sobolev_norm(f, sigma) == amplitude. The 0.55 excess puts the field in
/// H^sigma but keeps it out of H^{sigma + 1/2}. Deterministic in seed;
/// rejects sigma <= 0.
Field synthesize_rough_field(const PeriodicGrid& g, double sigma,
                             double amplitude, std::uint64_t seed);

/// 2/3-rule low-pass: zeroes every mode with |m~| > n/3. Used to keep
/// pseudo-spectral products alias-free.
Field dealias(const PeriodicGrid& g, const Field& f);

}  // namespace gnflow
