#pragma once

#include <variant>
#include <vector>

#include "conex/extension_spectrum.hpp"
#include "conex/mesh.hpp"
#include "conex/mu_zero.hpp"

namespace conex {

/// Closed-form angular profile cos^s(phi) of the half-space function
/// (x_n)_+^s, defined on the aperture theta = pi/2.
struct HalfSpaceTag {};

/// Angular profile sampled on nodes in [0, theta]; evaluation interpolates
/// cubically except on the cell touching theta, where a
/// (theta - phi)^edge_exponent blend is used; zero beyond theta.
struct SampledAngular {
  std::vector<double> phi, value;
  double edge_exponent = 1.0;
};

/// Homogeneous axisymmetric function r^gamma g(phi) supported on the cone,
/// with 0 < gamma < 2s so the singular integral converges at infinity.
struct HomogeneousProfile {
  double gamma = 0.5;
  CapCone cone;
  double s = 0.5;
  std::variant<HalfSpaceTag, SampledAngular> g;

  double angular(double phi) const;
};

HomogeneousProfile half_space_profile(int n, double s);
HomogeneousProfile profile_from_extension(const CapCone& cone,
                                          const ExtensionEigenResult& result);

/// Quadrature controls for the singular integral.  The angular integral uses
/// composite Gauss panels split where the sphere of radius rho crosses the
/// cone boundary, with angular_nodes points on each panel; the radial
/// integral uses log-spaced panels.  Below rho_min the symmetric difference
/// is replaced by its second-order Taylor mass; beyond rho_max the two
/// leading tail terms are added in closed form.
struct QuadratureSpec {
  int angular_nodes = 64;
  int radial_per_decade = 16;
  double rho_min = 1e-4;
  double rho_max = 1e4;
  int radial_gauss = 8;

  void validate() const;
  QuadratureSpec coarse() const;
};

struct OracleValue {
  double value = 0.0;
  double error_bound = 0.0;
  /// error_bound exceeds 10 percent of the local scale C(n,s) r^(gamma-2s)
  bool accuracy_warning = false;
};

struct PolarPoint {
  double r = 1.0;
  double phi = 0.0;
};

/// (-Delta)^s of the profile at a point strictly inside the cone
/// (phi < theta - 0.01), through the symmetric-difference form
///   C(n,s)/2 int (2u(x) - u(x+y) - u(x-y)) |y|^(-n-2s) dy.
OracleValue evaluate_fractional_laplacian(const HomogeneousProfile& p,
                                          const PolarPoint& point,
                                          const QuadratureSpec& spec = {});

/// max over the points of |(-Delta)^s p| / (C(n,s) r^(gamma-2s)).
/// Needs at least three interior points.
double sharmonicity_residual(const HomogeneousProfile& p,
                             const std::vector<PolarPoint>& points,
                             const QuadratureSpec& spec = {});

struct BarrierReport {
  double max_value = 0.0;  ///< signed max of (-Delta)^s v over the points
  double max_error_bound = 0.0;
  double tol = 0.0;        ///< 1e-2 C(n,s) / (2s - gamma_star)
  double gamma_star = 0.0;
  bool nonpositive = false;
};

/// Sign check of the barrier r^(gamma_star) psi(phi) built from the mu0
/// minimizer: supersolutions of the dual problem have (-Delta)^s v <= 0
/// inside the cone.  psi is renormalized internally, so the report is
/// invariant under positive scaling of the minimizer.
BarrierReport barrier_sign_check(const CapCone& cone, double s,
                                 const MuZeroResult& mu,
                                 const std::vector<PolarPoint>& points,
                                 const QuadratureSpec& spec = {});

}  // namespace conex
