#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "conex/asymptotics.hpp"
#include "conex/cap_spectrum.hpp"
#include "conex/errors.hpp"
#include "conex/mesh.hpp"
#include "conex/special_functions.hpp"

using namespace conex;

TEST_CASE("cone classification") {
  auto classify = [](double theta) {
    CapCone cone(2, theta);
    return classify_cone(cone, Mesh1D::uniform(theta, 1200));
  };
  CHECK(classify(kPi / 8) == ConeClass::narrow);
  CHECK(classify(kPi / 4) == ConeClass::narrow);  // gamma = 2 ties toward narrow
  CHECK(classify(0.3 * kPi) == ConeClass::wide);
  CHECK(classify(kPi / 2) == ConeClass::wide);
}

TEST_CASE("classical pair-mean curve has the right minimum") {
  AcfParams params;
  params.grid_size = 21;
  params.cap_nodes = 600;
  AcfCurve curve = acf_curve(2, 1.0, params);
  REQUIRE(curve.theta_grid.size() == 21);
  CHECK(curve.theta_grid.front() == doctest::Approx(0.02 * kPi).epsilon(1e-14));
  CHECK(curve.theta_grid.back() == doctest::Approx(0.98 * kPi).epsilon(1e-14));
  CHECK(curve.theta_grid[10] == doctest::Approx(0.5 * kPi).epsilon(1e-14));
  CHECK(std::abs(curve.nu_acf - 1.0) <= 1e-6);
  CHECK(curve.argmin_theta == 0.5 * kPi);  // exact snap at the symmetric minimum

  // complementary symmetry of the pair mean, by construction
  for (size_t k = 0; k < curve.pair_mean.size(); ++k)
    CHECK(curve.pair_mean[k] ==
          doctest::Approx(curve.pair_mean[curve.pair_mean.size() - 1 - k])
              .epsilon(1e-15));
  // gamma_s decreases in theta
  for (size_t k = 1; k < curve.gamma_s.size(); ++k)
    CHECK(curve.gamma_s[k] < curve.gamma_s[k - 1]);

  auto [nu, argmin] = acf_value(2, 1.0, params);
  CHECK(nu == curve.nu_acf);
  CHECK(argmin == curve.argmin_theta);
}

TEST_CASE("fractional pair-mean minimum respects the known bounds") {
  AcfParams params;
  params.grid_size = 9;
  params.phi_cells = 48;
  params.psi_cells = 24;
  double s = 0.75;
  AcfCurve curve = acf_curve(2, s, params);
  CHECK(curve.nu_acf >= std::max(0.5 * s, s - 0.25) - 1e-3);
  CHECK(curve.nu_acf <= s + 1e-3);
  CHECK(curve.argmin_theta == 0.5 * kPi);
}

TEST_CASE("curve parameter validation") {
  AcfParams bad;
  bad.grid_size = 10;
  CHECK_THROWS_AS(acf_curve(2, 0.5, bad), std::domain_error);
  bad.grid_size = 7;
  CHECK_THROWS_AS(acf_curve(2, 0.5, bad), std::domain_error);
  CHECK_THROWS_AS(acf_curve(2, 1.5, {}), std::domain_error);
  CHECK_THROWS_AS(acf_curve(2, 0.0, {}), std::domain_error);
  CHECK_THROWS_AS(acf_curve(1, 0.5, {}), std::domain_error);
}

TEST_CASE("sweep rows and validation") {
  CapCone cone(2, kPi / 8);
  SweepParams params;
  params.phi_cells = 48;
  params.psi_cells = 24;
  params.mu_nodes = 400;
  std::vector<double> s_list{0.5, 0.9, 0.99};
  SweepTable table = limit_sweep(cone, s_list, params);
  REQUIRE(table.rows.size() == s_list.size());
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const SweepRow& row = table.rows[i];
    CHECK(row.s == s_list[i]);
    CHECK(row.cns == doctest::Approx(normalization_constant(2, row.s)).epsilon(1e-13));
    CHECK(row.ratio ==
          doctest::Approx(row.cns / (2.0 * row.s - row.gamma_s)).epsilon(1e-12));
    CHECK(row.has_gamma_star);  // pi/8 is admissible
    CHECK(row.gamma_star < 2.0 * row.s);
    CHECK(row.gamma_s <= row.gamma_star + 1e-3);
  }
  // gamma_s grows toward the classical exponent as s -> 1
  CHECK(table.rows[0].gamma_s < table.rows[1].gamma_s);
  CHECK(table.rows[1].gamma_s < table.rows[2].gamma_s);

  // wide cone: no barrier column
  SweepTable wide = limit_sweep(CapCone(2, kPi / 2), {0.9, 0.99}, params);
  for (const SweepRow& row : wide.rows) CHECK_FALSE(row.has_gamma_star);

  CHECK_THROWS_AS(limit_sweep(cone, {}, params), std::domain_error);
  CHECK_THROWS_AS(limit_sweep(cone, {0.9, 0.5}, params), std::domain_error);
  CHECK_THROWS_AS(limit_sweep(cone, {0.5, 0.9995}, params), std::domain_error);
}

TEST_CASE("limit estimates recover both regimes") {
  SweepParams params;
  params.phi_cells = 64;
  params.psi_cells = 32;
  std::vector<double> s_list{0.9, 0.95, 0.99, 0.999};

  CapCone wide(2, kPi / 2);
  SweepTable wide_table = limit_sweep(wide, s_list, params);
  CapEigenResult wide_cap =
      classical_cap_eigenvalue(wide, Mesh1D::uniform(wide.theta, 1200));
  LimitEstimate west = limit_estimates(wide_table, wide_cap);
  CHECK(west.classification == ConeClass::wide);
  CHECK(std::abs(west.gamma_bar_est - 1.0) <= 5e-3);
  CHECK(west.predicted_gamma_bar == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(west.predicted_mu == 0.0);
  CHECK(std::abs(west.mu_est) <= 0.05);

  CapCone narrow(2, kPi / 8);
  SweepTable narrow_table = limit_sweep(narrow, s_list, params);
  CapEigenResult narrow_cap =
      classical_cap_eigenvalue(narrow, Mesh1D::uniform(narrow.theta, 1200));
  MuZeroResult mu = mu_zero_cap(narrow, Mesh1D::uniform(narrow.theta, 1200));
  LimitEstimate nest = limit_estimates(narrow_table, narrow_cap, &mu);
  CHECK(nest.classification == ConeClass::narrow);
  CHECK(nest.predicted_gamma_bar == doctest::Approx(2.0).epsilon(1e-9));
  double mu_exact = 16.0 / (4.0 - kPi);
  CHECK(std::abs(nest.gamma_bar_est - 2.0) <= 0.05);
  CHECK(std::abs(nest.mu_est - mu_exact) <= 0.15 * mu_exact);
  CHECK(nest.predicted_mu == doctest::Approx(mu.mu0).epsilon(1e-12));

  // estimates need three rows near s = 1
  SweepTable small = wide_table;
  small.rows.resize(2);
  CHECK_THROWS_AS(limit_estimates(small, wide_cap), std::domain_error);
  SweepTable low = limit_sweep(wide, {0.3, 0.5, 0.7}, params);
  CHECK_THROWS_AS(limit_estimates(low, wide_cap), std::domain_error);
}

TEST_CASE("grid evaluation is deterministic across thread counts") {
  AcfParams params;
  params.grid_size = 9;
  params.phi_cells = 32;
  params.psi_cells = 16;
  setenv("CONE_EXPONENTS_THREADS", "1", 1);
  AcfCurve serial = acf_curve(2, 0.6, params);
  setenv("CONE_EXPONENTS_THREADS", "4", 1);
  AcfCurve parallel = acf_curve(2, 0.6, params);
  unsetenv("CONE_EXPONENTS_THREADS");
  REQUIRE(serial.gamma_s.size() == parallel.gamma_s.size());
  for (size_t k = 0; k < serial.gamma_s.size(); ++k)
    CHECK(serial.gamma_s[k] == parallel.gamma_s[k]);
  CHECK(serial.nu_acf == parallel.nu_acf);
  CHECK(serial.argmin_theta == parallel.argmin_theta);
}
