#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "conex/errors.hpp"
#include "conex/mesh.hpp"
#include "conex/mu_zero.hpp"
#include "conex/special_functions.hpp"

using namespace conex;

namespace {

// planar closed form 4 / (tan 2theta - 2theta), valid for theta < pi/4
double planar_mu0(double theta) { return 4.0 / (std::tan(2.0 * theta) - 2.0 * theta); }

}  // namespace

TEST_CASE("planar closed form") {
  struct Row {
    double theta, mu0;
  };
  // frozen evaluations of 4 / (tan 2theta - 2theta)
  const Row rows[] = {
      {kPi / 16, 185.921289969364515},
      {kPi / 8, 18.639169465301950778},
      {kPi / 6, 5.840667271100247251},
      {0.24 * kPi, 0.278036885561878831},
  };
  for (const Row& row : rows) {
    CapCone cone(2, row.theta);
    MuZeroResult r = mu_zero_cap(cone, Mesh1D::uniform(row.theta, 2000));
    CHECK(std::abs(r.mu0 - row.mu0) <= 1e-5 * row.mu0);
    CHECK(std::abs(row.mu0 - planar_mu0(row.theta)) <= 1e-9 * row.mu0);
    CHECK(std::abs(r.mu0 - row.mu0) <= std::max(r.est_error, 1e-9 * row.mu0));
  }
}

TEST_CASE("admissibility threshold") {
  CHECK_THROWS_AS(mu_zero_cap(CapCone(2, kPi / 3), Mesh1D::uniform(kPi / 3, 400)),
                  AdmissibilityError);
  CHECK_THROWS_AS(mu_zero_cap(CapCone(2, kPi / 4), Mesh1D::uniform(kPi / 4, 400)),
                  AdmissibilityError);
  try {
    mu_zero_cap(CapCone(2, kPi / 3), Mesh1D::uniform(kPi / 3, 400));
    FAIL("expected AdmissibilityError");
  } catch (const AdmissibilityError& e) {
    CHECK(std::string(e.what()).find("0.785398") != std::string::npos);
  }
  // just inside the admissible range
  CapCone cone(2, 0.24 * kPi);
  CHECK_NOTHROW(mu_zero_cap(cone, Mesh1D::uniform(cone.theta, 400)));
}

TEST_CASE("two evaluation paths agree") {
  struct Probe {
    int n;
    double theta;
  };
  const Probe probes[] = {{2, kPi / 16}, {2, kPi / 8}, {2, kPi / 6}, {3, kPi / 8}};
  for (const Probe& probe : probes) {
    CapCone cone(probe.n, probe.theta);
    Mesh1D mesh = Mesh1D::uniform(probe.theta, 800);
    MuZeroResult direct = mu_zero_cap(cone, mesh);
    double rayleigh = mu_zero_rayleigh(cone, mesh);
    double quotient = mu_zero_quotient(cone, mesh, direct.psi);
    CHECK(std::abs(quotient - rayleigh) <= 1e-6 * rayleigh);
    // the linear-reduction value extrapolates, the quotient does not
    CHECK(std::abs(direct.mu0 - rayleigh) <= 1e-3 * rayleigh);
  }
}

TEST_CASE("quotient is scale invariant and minimized by psi") {
  CapCone cone(2, kPi / 8);
  Mesh1D mesh = Mesh1D::uniform(cone.theta, 600);
  MuZeroResult r = mu_zero_cap(cone, mesh);

  std::vector<double> scaled = r.psi;
  for (double& v : scaled) v *= 137.5;
  double q0 = mu_zero_quotient(cone, mesh, r.psi);
  CHECK(mu_zero_quotient(cone, mesh, scaled) == doctest::Approx(q0).epsilon(1e-12));

  std::mt19937 rng(321u);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> u = r.psi;
    for (size_t i = 0; i + 1 < u.size(); ++i) u[i] += 0.05 * unit(rng);
    u.back() = 0.0;
    CHECK(mu_zero_quotient(cone, mesh, u) >= q0 * (1.0 - 1e-9));
  }
  // a crude admissible competitor scores clearly worse
  std::vector<double> tent(mesh.nodes.size());
  for (size_t i = 0; i < tent.size(); ++i) tent[i] = cone.theta - mesh.nodes[i];
  CHECK(mu_zero_quotient(cone, mesh, tent) > q0 * 1.0001);
}

TEST_CASE("minimizer shape and validation") {
  CapCone cone(2, kPi / 8);
  Mesh1D mesh = Mesh1D::uniform(cone.theta, 400);
  MuZeroResult r = mu_zero_cap(cone, mesh);
  REQUIRE(r.psi.size() == mesh.nodes.size());
  REQUIRE(r.w.size() == mesh.nodes.size());
  double mx = 0.0;
  for (double v : r.psi) {
    CHECK(v >= -1e-12);
    mx = std::max(mx, v);
  }
  CHECK(mx == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(r.psi.back()) <= 1e-14);
  CHECK(r.lambda1 > 4.0);

  std::vector<double> bad(mesh.nodes.size(), 1.0);
  CHECK_THROWS_AS(mu_zero_quotient(cone, mesh, bad), std::domain_error);
  std::vector<double> wrong_size(10, 0.0);
  CHECK_THROWS_AS(mu_zero_quotient(cone, mesh, wrong_size), std::domain_error);
  CHECK_THROWS_AS(mu_zero_cap(cone, Mesh1D::uniform(0.9 * cone.theta, 400)),
                  std::domain_error);
}

TEST_CASE("barrier exponent") {
  CapCone cone(2, kPi / 8);
  double mu0 = 16.0 / (4.0 - kPi);
  // frozen: 2s - s C(2, 0.99) / mu0 at s = 0.99
  CHECK(barrier_exponent(cone, 0.99, mu0) ==
        doctest::Approx(1.979338724358918513).epsilon(1e-12));
  for (double s : {0.3, 0.7, 0.99}) {
    double g = barrier_exponent(cone, s, mu0);
    CHECK(g > 0.0);
    CHECK(g < 2.0 * s);
  }
  CHECK_THROWS_AS(barrier_exponent(cone, 0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(barrier_exponent(cone, 0.5, -3.0), std::domain_error);
}
