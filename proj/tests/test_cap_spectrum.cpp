#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "conex/cap_spectrum.hpp"
#include "conex/mesh.hpp"
#include "conex/special_functions.hpp"

using namespace conex;

TEST_CASE("hemisphere eigenvalues are n - 1") {
  for (int n : {2, 3, 4, 6}) {
    CapCone cone(n, 0.5 * kPi);
    CapEigenResult r = classical_cap_eigenvalue(cone, Mesh1D::uniform(cone.theta, 2000));
    CHECK(std::abs(r.lambda1 - (n - 1.0)) <= 1e-6);
    CHECK(std::abs(r.gamma - 1.0) <= 1e-6);
  }
}

TEST_CASE("planar sectors match pi / (2 theta)") {
  for (double theta : {kPi / 8, kPi / 6, kPi / 4, kPi / 3, kPi / 2, 0.75 * kPi}) {
    CapCone cone(2, theta);
    CapEigenResult r = classical_cap_eigenvalue(cone, Mesh1D::uniform(theta, 2000));
    double exact = 0.5 * kPi / theta;
    CHECK(std::abs(r.gamma - exact) <= 1e-6);
    CHECK(r.lambda1 == doctest::Approx(exact * exact).epsilon(1e-6));
    // extrapolated value lands within the reported error estimate
    CHECK(std::abs(r.lambda1 - exact * exact) <= std::max(r.est_error, 1e-10));
  }
}

TEST_CASE("first eigenfunction shape") {
  CapCone cone(3, 0.4 * kPi);
  CapEigenResult r = classical_cap_eigenvalue(cone, Mesh1D::uniform(cone.theta, 400));
  REQUIRE(r.eigenfunction.size() == r.mesh.nodes.size());
  double mx = 0.0;
  for (double v : r.eigenfunction) {
    CHECK(v >= -1e-12);
    mx = std::max(mx, v);
  }
  CHECK(mx == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(r.eigenfunction.back()) <= 1e-14);
  for (size_t i = 1; i < r.eigenfunction.size(); ++i)
    CHECK(r.eigenfunction[i] <= r.eigenfunction[i - 1] + 1e-10);
}

TEST_CASE("exponent is decreasing in the aperture") {
  CapCone narrow(3, 0.2 * kPi), mid(3, 0.4 * kPi), wide(3, 0.7 * kPi);
  double g1 = classical_exponent(narrow, Mesh1D::uniform(narrow.theta, 600));
  double g2 = classical_exponent(mid, Mesh1D::uniform(mid.theta, 600));
  double g3 = classical_exponent(wide, Mesh1D::uniform(wide.theta, 600));
  CHECK(g1 > g2);
  CHECK(g2 > g3);
  CHECK(g3 > 0.0);
}

TEST_CASE("aperture recovered from a target exponent") {
  // n = 2: gamma = pi / (2 theta) inverts to theta = pi / (2 gamma)
  double t1 = aperture_from_exponent(2, 2.0);
  CHECK(std::abs(t1 - kPi / 4) <= 2e-6);
  double t2 = aperture_from_exponent(2, 0.55);
  CHECK(std::abs(t2 - kPi / 1.1) <= 2e-5);
  double t3 = aperture_from_exponent(3, 1.0);
  CHECK(std::abs(t3 - kPi / 2) <= 2e-6);
  // round trip through the forward solver
  CapCone cone(3, aperture_from_exponent(3, 2.0));
  double g = classical_exponent(cone, Mesh1D::uniform(cone.theta, 2000));
  CHECK(std::abs(g - 2.0) <= 1e-6);
  CHECK_THROWS_AS(aperture_from_exponent(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(aperture_from_exponent(2, -1.0), std::domain_error);
  CHECK_THROWS_AS(aperture_from_exponent(1, 1.0), std::domain_error);
}

TEST_CASE("input validation") {
  CapCone cone(2, 0.5);
  CHECK_THROWS_AS(classical_cap_eigenvalue(cone, Mesh1D::uniform(0.7, 100)),
                  std::domain_error);
  CHECK_THROWS_AS(CapCone(1, 0.5), std::domain_error);
  CHECK_THROWS_AS(CapCone(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(CapCone(2, kPi + 0.1), std::domain_error);
}

TEST_CASE("refinement shrinks the error estimate") {
  CapCone cone(2, kPi / 3);
  CapEigenResult coarse = classical_cap_eigenvalue(cone, Mesh1D::uniform(cone.theta, 100));
  CapEigenResult fine = classical_cap_eigenvalue(cone, Mesh1D::uniform(cone.theta, 800));
  CHECK(fine.est_error < coarse.est_error);
  double exact = 1.5 * 1.5;
  CHECK(std::abs(fine.lambda1 - exact) < std::abs(coarse.lambda1 - exact));
}
