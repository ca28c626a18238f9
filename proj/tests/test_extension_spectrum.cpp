#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>

#include "conex/errors.hpp"
#include "conex/extension_spectrum.hpp"
#include "conex/mesh.hpp"
#include "conex/special_functions.hpp"

using namespace conex;

namespace {

SparseMat to_sparse(const Eigen::MatrixXd& dense) {
  SparseMat out(dense.rows(), dense.cols());
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < dense.rows(); ++i)
    for (int j = 0; j < dense.cols(); ++j)
      if (dense(i, j) != 0.0) trips.emplace_back(i, j, dense(i, j));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace

TEST_CASE("assembled forms are symmetric and definite") {
  CapCone cone(2, kPi / 3);
  HalfSphereMesh mesh = HalfSphereMesh::make(cone, 24, 12);
  for (double s : {0.3, 0.5, 0.9}) {
    WeightedForms forms = assemble_weighted_forms(cone, s, mesh);
    const int m = static_cast<int>(forms.stiffness.rows());
    REQUIRE(m == static_cast<int>(forms.free_nodes.size()));
    Eigen::MatrixXd k = Eigen::MatrixXd(forms.stiffness);
    Eigen::MatrixXd mm = Eigen::MatrixXd(forms.mass);
    CHECK((k - k.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * k.cwiseAbs().maxCoeff());
    CHECK((mm - mm.transpose()).cwiseAbs().maxCoeff() <=
          1e-12 * mm.cwiseAbs().maxCoeff());
    std::mt19937 rng(7u);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXd x(m);
      for (int i = 0; i < m; ++i) x(i) = gauss(rng);
      CHECK(x.dot(mm * x) > 0.0);
      CHECK(x.dot(k * x) > 0.0);
    }
  }
}

TEST_CASE("sparse eigensolver agrees with the dense pencil solver") {
  std::mt19937 rng(12345u);
  std::normal_distribution<double> gauss;
  const int m = 50;
  Eigen::MatrixXd r(m, m), t(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      r(i, j) = gauss(rng);
      t(i, j) = gauss(rng);
    }
  Eigen::MatrixXd a = r.transpose() * r + m * Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd b = t.transpose() * t + Eigen::MatrixXd::Identity(m, m);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(a, b);
  double ref = dense.eigenvalues()(0);

  EigenPair pair = smallest_eigenpair(to_sparse(a), to_sparse(b));
  CHECK(pair.lambda == doctest::Approx(ref).epsilon(1e-8));
  Eigen::VectorXd resid = a * pair.vector - pair.lambda * (b * pair.vector);
  CHECK(resid.norm() <= 1e-6 * (a * pair.vector).norm());
  CHECK(std::abs(pair.vector.dot(b * pair.vector) - 1.0) <= 1e-10);
}

TEST_CASE("eigensolver closed forms") {
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 2.0, -1.0, -1.0, 2.0;
  b = Eigen::MatrixXd::Identity(2, 2);
  EigenPair pair = smallest_eigenpair(to_sparse(a), to_sparse(b));
  CHECK(pair.lambda == doctest::Approx(1.0).epsilon(1e-12));

  // K = M: every vector is an eigenvector with lambda = 1
  Eigen::MatrixXd spd = a * a;
  EigenPair same = smallest_eigenpair(to_sparse(spd), to_sparse(spd));
  CHECK(same.lambda == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(smallest_eigenpair(to_sparse(a), to_sparse(Eigen::MatrixXd::Identity(3, 3))),
                  std::domain_error);
}

TEST_CASE("half-space anchor lambda = s (n - s)") {
  for (int n : {2, 3}) {
    for (double s : {0.3, 0.5, 0.75, 0.9}) {
      CapCone cone(n, 0.5 * kPi);
      HalfSphereMesh mesh = HalfSphereMesh::make(cone, 96, 48);
      ExtensionEigenResult r = fractional_cap_eigenvalue(cone, s, mesh);
      double exact = s * (n - s);
      CHECK(std::abs(r.lambda1s - exact) <= 4e-3 * exact);
      CHECK(std::abs(r.gamma_s - s) <= 4e-3);
      CHECK(r.s == s);
      // the eigenvalue error estimate covers the observed error
      CHECK(std::abs(r.lambda1s - exact) <= std::max(3.0 * r.est_error, 1e-6));
    }
  }
}

TEST_CASE("exponent decreases in aperture and increases in s") {
  double s = 0.6;
  double g_narrow = fractional_exponent(CapCone(2, kPi / 6), s,
                                        HalfSphereMesh::make(CapCone(2, kPi / 6), 48, 24));
  double g_mid = fractional_exponent(CapCone(2, kPi / 4), s,
                                     HalfSphereMesh::make(CapCone(2, kPi / 4), 48, 24));
  double g_wide = fractional_exponent(CapCone(2, kPi / 2), s,
                                      HalfSphereMesh::make(CapCone(2, kPi / 2), 48, 24));
  CHECK(g_narrow > g_mid);
  CHECK(g_mid > g_wide);

  CapCone cone(2, kPi / 4);
  HalfSphereMesh mesh = HalfSphereMesh::make(cone, 48, 24);
  double g_lo = fractional_exponent(cone, 0.3, mesh);
  double g_hi = fractional_exponent(cone, 0.8, mesh);
  CHECK(g_lo < g_hi);
  // fractional exponent stays below the classical one (gamma = 2 here)
  CHECK(g_hi < 2.0);
}

TEST_CASE("richardson estimate shrinks under refinement") {
  CapCone cone(2, kPi / 2);
  ExtensionEigenResult coarse =
      fractional_cap_eigenvalue(cone, 0.5, HalfSphereMesh::make(cone, 32, 16));
  ExtensionEigenResult fine =
      fractional_cap_eigenvalue(cone, 0.5, HalfSphereMesh::make(cone, 128, 64));
  CHECK(fine.est_error < coarse.est_error);
  double exact = 0.75;
  CHECK(std::abs(fine.lambda1s - exact) < std::abs(coarse.lambda1s - exact));
}

TEST_CASE("trace profile") {
  CapCone cone(2, 0.5 * kPi);
  double s = 0.5;
  HalfSphereMesh mesh = HalfSphereMesh::make(cone, 96, 48);
  ExtensionEigenResult r = fractional_cap_eigenvalue(cone, s, mesh);
  TraceProfile g = trace_profile(r);
  CHECK(g.theta == doctest::Approx(cone.theta));
  CHECK(g.s == s);
  // half-space trace is cos^s(phi), normalized to 1 at the apex direction
  for (double phi : {0.0, 0.2, 0.6, 1.0, 1.3}) {
    double exact = std::pow(std::cos(phi), s);
    CHECK(std::abs(g(phi) - exact) <= 2e-2);
  }
  CHECK(g(cone.theta) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g(kPi) == 0.0);
  CHECK_THROWS_AS(g(-0.1), std::domain_error);
  CHECK_THROWS_AS(g(kPi + 0.2), std::domain_error);

  // vanishing rate near the edge behaves like dist^s
  double d1 = 0.02, d2 = 0.004;
  double slope = std::log(g(cone.theta - d1) / g(cone.theta - d2)) / std::log(d1 / d2);
  CHECK(std::abs(slope - s) <= 0.1);
}

TEST_CASE("entry point validation") {
  CapCone cone(2, kPi / 4);
  HalfSphereMesh mesh = HalfSphereMesh::make(cone, 32, 16);
  CHECK_THROWS_AS(fractional_cap_eigenvalue(cone, 0.0, mesh), std::domain_error);
  CHECK_THROWS_AS(fractional_cap_eigenvalue(cone, 1.0, mesh), std::domain_error);
  CHECK_THROWS_AS(fractional_cap_eigenvalue(cone, 0.9995, mesh), std::domain_error);
  CapCone other(2, kPi / 3);
  CHECK_THROWS_AS(fractional_cap_eigenvalue(other, 0.5, mesh), std::domain_error);
}
