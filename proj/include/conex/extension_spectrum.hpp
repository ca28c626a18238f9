#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "conex/mesh.hpp"

namespace conex {

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Weighted stiffness and mass forms on the free nodes of the half-sphere
/// mesh.  The weight is (sin psi)^{1-2s} (cos psi)^{n-1} (sin phi)^{n-2}; the
/// stiffness integrand carries u_psi^2 + u_phi^2 / cos^2 psi.  Homogeneous
/// Dirichlet values are imposed on the trace nodes {psi = 0, phi >= theta};
/// every other boundary condition is natural.  Bilinear elements; the bottom
/// psi row integrates the psi^{1-2s} factor exactly with a Gauss-Jacobi rule.
struct WeightedForms {
  SparseMat stiffness, mass;
  std::vector<int> free_nodes;  ///< global mesh node index per free dof
};

WeightedForms assemble_weighted_forms(const CapCone& cone, double s,
                                      const HalfSphereMesh& mesh);

struct EigenPairOptions {
  double rayleigh_tol = 1e-12;  ///< relative change of the eigenvalue
  double residual_tol = 1e-8;   ///< ||K v - lambda M v|| <= tol ||M v||
  int max_outer = 10000;
};

struct EigenPair {
  double lambda = 0.0;
  Eigen::VectorXd vector;  ///< M-normalized
  int iterations = 0;
  double residual = 0.0;
};

/// Smallest generalized eigenpair of (K, M), both symmetric positive
/// definite, by inverse power iteration started from the all-ones vector.
/// Inner solves use conjugate gradients with a diagonal preconditioner and
/// warm starts.  Throws NumericalError with the residual when the outer
/// iteration cap is exceeded.
EigenPair smallest_eigenpair(const SparseMat& stiffness, const SparseMat& mass,
                             const EigenPairOptions& opt = {});

struct ExtensionEigenResult {
  double lambda1s = 0.0;  ///< two-level extrapolated eigenvalue
  double gamma_s = 0.0;   ///< positive root of gamma (gamma + n - 2s) = lambda1s
  std::vector<double> eigenvector;  ///< all mesh nodes, max-normalized to 1
  HalfSphereMesh mesh;
  double est_error = 0.0;
  int iterations = 0;
  double s = 0.5;
};

/// First eigenvalue of the weighted half-sphere problem whose trace vanishes
/// outside the cap.  Solves on the given mesh and on its half-resolution
/// coarsening; the headline value extrapolates the pair assuming second
/// order.  s is capped at 0.999.
ExtensionEigenResult fractional_cap_eigenvalue(const CapCone& cone, double s,
                                               const HalfSphereMesh& mesh);

double fractional_exponent(const CapCone& cone, double s,
                           const HalfSphereMesh& mesh);

/// Trace of the eigenfunction on psi = 0, renormalized to max 1.  Evaluation
/// interpolates cubically between nodes except over the last cell before
/// theta, where a (theta - phi)^s-shaped blend matches the boundary behavior;
/// identically zero for phi >= theta.
struct TraceProfile {
  std::vector<double> phi, value;
  double theta = 0.0;
  double s = 0.5;
  double operator()(double phi_eval) const;
};

TraceProfile trace_profile(const ExtensionEigenResult& result);

}  // namespace conex
