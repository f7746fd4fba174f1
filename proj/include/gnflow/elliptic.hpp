#pragma once

// The variable-coefficient elliptic operator u -> a u - d/dx(b du/dx) on the
// periodic grid, discretized in flux form with arithmetic-mean half-point
// coefficients:
//
//   (A u)_j = a_j u_j - [ b_{j+1/2} (u_{j+1} - u_j)
//                       - b_{j-1/2} (u_j - u_{j-1}) ] / dx^2,
//   b_{j+1/2} = (b_j + b_{j+1}) / 2.
//
// With a,b > 0 the matrix is symmetric positive definite and cyclic
// tridiagonal; solves use the Thomas algorithm with a Sherman-Morrison
// corner correction and verify the residual afterwards.

#include "gnflow/grid.hpp"

namespace gnflow {

/// Surface height h (not h - 1). Valid states have min h > 0.
struct HeightField {
  Field values;
};

/// Throws ill_posed unless h is strictly positive and finite.
void require_valid(const PeriodicGrid& g, const HeightField& h);

/// Nodal coefficients of u -> a u - d/dx(b du/dx); ellipticity needs
/// min a > 0 and min b > 0.
struct EllipticProblem {
  Field a;
  Field b;
};

Field apply_elliptic(const PeriodicGrid& g, const EllipticProblem& p,
                     const Field& u);

/// Direct solve of a u - d/dx(b du/dx) = f. Signals ill_posed if the
/// ellipticity invariants fail and solver_failure if the verified residual
/// exceeds 1e-10 * |f|_2.
Field solve_elliptic(const PeriodicGrid& g, const EllipticProblem& p,
                     const Field& f);

/// The Green-Naghdi operator u -> 3 h u - d/dx(h^3 du/dx) and its inverse
/// (the specialization a = 3h, b = h^3).
Field apply_gn_operator(const PeriodicGrid& g, const HeightField& h,
                        const Field& u);
Field solve_gn_operator(const PeriodicGrid& g, const HeightField& h,
                        const Field& f);

}  // namespace gnflow
