#pragma once

#include <vector>

#include "conex/mesh.hpp"

namespace conex {

struct CapEigenResult {
  double lambda1 = 0.0;    ///< two-level extrapolated principal eigenvalue
  double gamma = 0.0;      ///< positive root of gamma (gamma + n - 2) = lambda1
  std::vector<double> eigenfunction;  ///< nodal values on the input mesh, max 1
  Mesh1D mesh;
  double est_error = 0.0;  ///< |lambda_fine - lambda_coarse| / 3
};

/// Principal eigenvalue of -(sin^{n-2} phi u')' = lambda sin^{n-2} phi u on
/// (0, theta) with u(theta) = 0 and a natural condition at 0.  P1 elements
/// with 3-point Gauss per cell; the headline eigenvalue extrapolates the
/// input-mesh and once-refined solves assuming second order.
CapEigenResult classical_cap_eigenvalue(const CapCone& cone, const Mesh1D& mesh);

/// Characteristic exponent of the cap: positive root of
/// gamma (gamma + n - 2) = lambda1(theta).  Decreasing in theta.
double classical_exponent(const CapCone& cone, const Mesh1D& mesh);

/// Aperture whose cap has the given exponent, by bisection (the exponent is
/// strictly decreasing in the aperture).  Accurate to well below 1e-6 in the
/// exponent; throws std::domain_error when the target is out of range.
double aperture_from_exponent(int n, double gamma_target, int mesh_nodes = 2000);

}  // namespace conex
