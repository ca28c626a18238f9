#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "conex/quadrature.hpp"

using namespace conex;

namespace {

// I_k = int_{-1}^{1} (1+x)^beta x^k dx through the contraction
// I_k = (2^{beta+1} - k I_{k-1}) / (beta + 1 + k), from integrating
// d/dx [(1+x)^{beta+1} x^k].
double jacobi_moment(double beta, int k) {
  double top = std::pow(2.0, beta + 1.0);
  double moment = top / (beta + 1.0);
  for (int j = 1; j <= k; ++j) moment = (top - j * moment) / (beta + 1.0 + j);
  return moment;
}

}  // namespace

TEST_CASE("gauss-legendre weights and exactness") {
  for (int n : {1, 2, 3, 5, 8, 16, 40}) {
    const QuadRule& q = gauss_legendre(n);
    REQUIRE(q.x.size() == static_cast<size_t>(n));
    REQUIRE(q.w.size() == static_cast<size_t>(n));
    double wsum = 0.0;
    for (double w : q.w) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (size_t i = 1; i < q.x.size(); ++i) CHECK(q.x[i] > q.x[i - 1]);
    // exact for monomials up to degree 2n-1
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += q.w[i] * std::pow(q.x[i], k);
      double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(acc - exact) <= 2e-13);
    }
  }
}

TEST_CASE("gauss-legendre analytic integral and caching") {
  const QuadRule& q = gauss_legendre(24);
  double acc = 0.0;
  for (size_t i = 0; i < q.x.size(); ++i) acc += q.w[i] * std::cos(q.x[i]);
  CHECK(acc == doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-15));
  CHECK(&gauss_legendre(24) == &q);
  CHECK_THROWS_AS(gauss_legendre(0), std::domain_error);
}

TEST_CASE("gauss-jacobi moments against the closed form") {
  for (double beta : {-0.5, -0.1, 0.3, 0.5, 1.7}) {
    for (int n : {2, 4, 8, 16}) {
      QuadRule q = gauss_jacobi_plus(n, beta);
      REQUIRE(q.x.size() == static_cast<size_t>(n));
      for (size_t i = 0; i < q.x.size(); ++i) {
        CHECK(q.x[i] > -1.0);
        CHECK(q.x[i] < 1.0);
        CHECK(q.w[i] > 0.0);
        if (i) CHECK(q.x[i] > q.x[i - 1]);
      }
      for (int k = 0; k <= 2 * n - 1; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += q.w[i] * std::pow(q.x[i], k);
        double exact = jacobi_moment(beta, k);
        CHECK(std::abs(acc - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
      }
    }
  }
  CHECK_THROWS_AS(gauss_jacobi_plus(4, -1.0), std::domain_error);
  CHECK_THROWS_AS(gauss_jacobi_plus(0, 0.5), std::domain_error);
}

TEST_CASE("gauss-jacobi reference rule") {
  // independently computed nodes and weights for n = 4, weight (1+x)^{1/2}
  QuadRule q = gauss_jacobi_plus(4, 0.5);
  const double xr[] = {-0.7897194348218204, -0.24755097109365012,
                       0.39789602483560155, 0.8746684987269279};
  const double wr[] = {0.18577256402918432, 0.5546439962064585,
                       0.7142551944006397, 0.430946328527844};
  for (int i = 0; i < 4; ++i) {
    CHECK(q.x[i] == doctest::Approx(xr[i]).epsilon(1e-13));
    CHECK(q.w[i] == doctest::Approx(wr[i]).epsilon(1e-13));
  }
}
