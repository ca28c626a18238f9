#include "conex/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "conex/special_functions.hpp"

namespace conex {

namespace {

QuadRule compute_gauss_legendre(int n) {
  QuadRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      double p2 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2 * k + 1) * x * p2 - k * p3) / (k + 1);
      }
      dp = n * (x * p1 - p2) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

}  // namespace

const QuadRule& gauss_legendre(int npts) {
  if (npts < 1) throw std::domain_error("gauss_legendre requires npts >= 1");
  static std::map<int, QuadRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(npts);
  if (it == cache.end()) it = cache.emplace(npts, compute_gauss_legendre(npts)).first;
  return it->second;
}

QuadRule gauss_jacobi_plus(int npts, double beta) {
  if (npts < 1) throw std::domain_error("gauss_jacobi_plus requires npts >= 1");
  if (!(beta > -1.0)) throw std::domain_error("gauss_jacobi_plus requires beta > -1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npts, npts);
  for (int k = 0; k < npts; ++k) {
    double t = 2.0 * k + beta;
    J(k, k) = (k == 0) ? beta / (beta + 2.0) : beta * beta / (t * (t + 2.0));
    if (k >= 1) {
      double bsq = 4.0 * k * k * (k + beta) * (k + beta) /
                   (t * t * (t + 1.0) * (t - 1.0));
      J(k, k - 1) = J(k - 1, k) = std::sqrt(bsq);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  double mass = std::pow(2.0, beta + 1.0) / (beta + 1.0);  // integral of (1+x)^beta
  QuadRule r;
  r.x.resize(npts);
  r.w.resize(npts);
  for (int i = 0; i < npts; ++i) {
    r.x[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    r.w[i] = mass * v0 * v0;
  }
  return r;
}

}  // namespace conex
