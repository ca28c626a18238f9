#pragma once

#include <vector>

#include "conex/mesh.hpp"

namespace conex {

struct MuZeroResult {
  double mu0 = 0.0;        ///< two-level extrapolated minimizer value
  std::vector<double> psi; ///< normalized minimizer, nodal values, max 1
  std::vector<double> w;   ///< auxiliary solution of (-lap - 2n) w = 1
  double lambda1 = 0.0;    ///< cap eigenvalue used for the admissibility check
  double est_error = 0.0;
  Mesh1D mesh;
};

/// Minimal value mu0(theta) of the quotient
///   (int |grad u|^2 - 2n u^2) / (int |u|)^2
/// over the cap, computed through the linear reduction: solve
/// (-lap_{S^{n-1}} - 2n) w = 1 with w(theta) = 0, then mu0 = 1 / int w.
/// Requires lambda1(theta) > 2n; otherwise throws AdmissibilityError naming
/// the threshold aperture.
MuZeroResult mu_zero_cap(const CapCone& cone, const Mesh1D& mesh);

/// Independent evaluation path: normalized fixed-point iteration on the
/// Euler-Lagrange system, with the quotient's denominator integrated by its
/// own 5-point Gauss rule on |u|.  Cross-checks mu_zero_cap.
double mu_zero_rayleigh(const CapCone& cone, const Mesh1D& mesh);

/// Discrete quotient for an arbitrary nodal trial (u(theta) node included);
/// scale-invariant, and >= mu0 up to discretization for admissible trials.
double mu_zero_quotient(const CapCone& cone, const Mesh1D& mesh,
                        const std::vector<double>& u);

/// Barrier homogeneity degree 2s - s C(n,s) / mu0 < 2s.
double barrier_exponent(const CapCone& cone, double s, double mu0);

}  // namespace conex
