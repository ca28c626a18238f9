#pragma once

#include <utility>
#include <vector>

#include "conex/cap_spectrum.hpp"
#include "conex/mesh.hpp"
#include "conex/mu_zero.hpp"

namespace conex {

enum class ConeClass { narrow, wide };

/// narrow when the classical exponent is at least 2, with a 1e-9 tie
/// resolved toward narrow; wide otherwise.
ConeClass classify_cone(const CapCone& cone, const Mesh1D& mesh);

struct AcfParams {
  int grid_size = 21;   ///< odd, >= 9, so the half-space aperture is a grid point
  int phi_cells = 96;   ///< extension mesh per aperture
  int psi_cells = 48;
  int cap_nodes = 800;  ///< meridian nodes for the classical mode (s = 1)
};

/// Exponents of complementary cap pairs on the aperture grid spanning
/// [0.02 pi, 0.98 pi]: pair_mean(theta) = (gamma_s(theta) + gamma_s(pi-theta))/2,
/// whose minimum is the two-phase monotonicity exponent nu_acf.
struct AcfCurve {
  int n = 2;
  double s = 0.5;
  std::vector<double> theta_grid;
  std::vector<double> gamma_s;
  std::vector<double> pair_mean;
  double nu_acf = 0.0;
  double argmin_theta = 0.0;
};

/// One eigensolve per grid aperture (s = 1 routes to the classical cap
/// solver); the grid minimum is refined by golden section to 1e-4 in theta,
/// except when the central aperture already attains the minimum, which snaps
/// the argmin to pi/2 exactly.
AcfCurve acf_curve(int n, double s, const AcfParams& params = {});

/// (nu_acf, argmin_theta) of the curve.
std::pair<double, double> acf_value(int n, double s, const AcfParams& params = {});

struct SweepParams {
  int phi_cells = 128;
  int psi_cells = 64;
  int mu_nodes = 800;  ///< meridian nodes for the mu0 solve on narrow cones
};

struct SweepRow {
  double s = 0.0;
  double lambda1s = 0.0;
  double gamma_s = 0.0;
  double cns = 0.0;         ///< normalization constant C(n, s)
  double ratio = 0.0;       ///< C(n, s) / (2s - gamma_s)
  double gamma_star = 0.0;  ///< barrier homogeneity, admissible narrow cones only
  double est_error = 0.0;
  bool has_gamma_star = false;
};

struct SweepTable {
  CapCone cone;
  std::vector<SweepRow> rows;
};

/// One extension eigensolve per s (increasing, max 0.999), plus the barrier
/// column when the cone admits the mu0 quotient.
SweepTable limit_sweep(const CapCone& cone, const std::vector<double>& s_list,
                       const SweepParams& params = {});

struct LimitEstimate {
  double gamma_bar_est = 0.0;  ///< limit of gamma_s from the sweep
  double mu_est = 0.0;         ///< limit of the ratio column
  ConeClass classification = ConeClass::wide;
  double predicted_gamma_bar = 0.0;  ///< min(gamma, 2) from the cap solve
  double predicted_mu = 0.0;         ///< 0 if gamma <= 2, else mu0
  double fit_residual_gamma = 0.0;
  double fit_residual_ratio = 0.0;
};

/// Fits a + b (1-s) to the last three sweep rows (all with s >= 0.9) for
/// gamma_s and for the ratio; the fit residuals are reported alongside.
/// The predictions come from the classical cap solve and, for cones with
/// gamma > 2, the mu0 result.
LimitEstimate limit_estimates(const SweepTable& table, const CapEigenResult& cap,
                              const MuZeroResult* mu = nullptr);

}  // namespace conex
