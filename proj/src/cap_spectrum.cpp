#include "conex/cap_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "conex/errors.hpp"
#include "conex/fem1d.hpp"
#include "conex/quadrature.hpp"
#include "conex/special_functions.hpp"

namespace conex {

namespace detail {

void assemble_weighted_1d(int n, const Mesh1D& mesh, TriDiag& stiffness,
                          TriDiag& mass) {
  const int nn = static_cast<int>(mesh.nodes.size());
  stiffness.diag.assign(nn, 0.0);
  stiffness.off.assign(nn - 1, 0.0);
  mass.diag.assign(nn, 0.0);
  mass.off.assign(nn - 1, 0.0);
  const QuadRule& g = gauss_legendre(3);
  for (int e = 0; e + 1 < nn; ++e) {
    double a = mesh.nodes[e], b = mesh.nodes[e + 1], h = b - a;
    double k00 = 0, k01 = 0, m00 = 0, m01 = 0, m11 = 0;
    for (size_t q = 0; q < g.x.size(); ++q) {
      double phi = a + 0.5 * h * (g.x[q] + 1.0);
      double w = 0.5 * h * g.w[q];
      if (n > 2) w *= std::pow(std::sin(phi), n - 2);
      double n0 = (b - phi) / h, n1 = (phi - a) / h;
      k00 += w / (h * h);
      k01 -= w / (h * h);
      m00 += w * n0 * n0;
      m01 += w * n0 * n1;
      m11 += w * n1 * n1;
    }
    stiffness.diag[e] += k00;
    stiffness.diag[e + 1] += k00;
    stiffness.off[e] += k01;
    mass.diag[e] += m00;
    mass.diag[e + 1] += m11;
    mass.off[e] += m01;
  }
}

void TriDiagFactor::factor(const TriDiag& t) {
  int n = static_cast<int>(t.diag.size());
  d.assign(n, 0.0);
  l.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return;
  d[0] = t.diag[0];
  for (int i = 1; i < n; ++i) {
    l[i - 1] = t.off[i - 1] / d[i - 1];
    d[i] = t.diag[i] - l[i - 1] * t.off[i - 1];
    if (!(d[i] > 0.0) || !std::isfinite(d[i]))
      throw NumericalError("tridiagonal factorization lost positive definiteness", d[i]);
  }
}

void TriDiagFactor::solve(std::vector<double>& x) const {
  int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
  for (int i = 0; i < n; ++i) x[i] /= d[i];
  for (int i = n - 2; i >= 0; --i) x[i] -= l[i] * x[i + 1];
}

void tridiag_apply(const TriDiag& t, const std::vector<double>& x,
                   std::vector<double>& y) {
  int n = static_cast<int>(t.diag.size());
  for (int i = 0; i < n; ++i) {
    double v = t.diag[i] * x[i];
    if (i > 0) v += t.off[i - 1] * x[i - 1];
    if (i + 1 < n) v += t.off[i] * x[i + 1];
    y[i] = v;
  }
}

static double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SmallestPair1D smallest_pair_1d(const TriDiag& stiffness, const TriDiag& mass) {
  const int n = static_cast<int>(stiffness.diag.size());
  TriDiagFactor f;
  f.factor(stiffness);
  std::vector<double> x(n, 1.0), y(n), mx(n);
  tridiag_apply(mass, x, mx);
  double nm = std::sqrt(dot(x, mx));
  for (auto& v : x) v /= nm;
  double lambda = 0.0, lambda_prev = -1.0;
  const int cap = 10000;
  for (int it = 0; it < cap; ++it) {
    tridiag_apply(mass, x, mx);
    y = mx;
    f.solve(y);  // y = K^{-1} M x
    std::vector<double> my(n);
    tridiag_apply(mass, y, my);
    double ymy = dot(y, my);
    lambda = dot(y, mx) / ymy;  // y'Ky = y'Mx since Ky = Mx
    double s = 1.0 / std::sqrt(ymy);
    for (int i = 0; i < n; ++i) x[i] = y[i] * s;
    if (std::abs(lambda - lambda_prev) <= 1e-13 * std::abs(lambda))
      return {lambda, x, it + 1};
    lambda_prev = lambda;
  }
  std::vector<double> kx(n);
  tridiag_apply(stiffness, x, kx);
  tridiag_apply(mass, x, mx);
  double r = 0.0, nrm = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = kx[i] - lambda * mx[i];
    r += d * d;
    nrm += mx[i] * mx[i];
  }
  throw NumericalError("inverse iteration did not converge within 10000 steps",
                       std::sqrt(r) / std::sqrt(nrm));
}

// Principal eigenvalue with the last node eliminated (Dirichlet at theta).
static SmallestPair1D solve_dirichlet_1d(int n, const Mesh1D& mesh) {
  TriDiag k, m;
  assemble_weighted_1d(n, mesh, k, m);
  TriDiag kf, mf;
  int nf = static_cast<int>(mesh.nodes.size()) - 1;
  kf.diag.assign(k.diag.begin(), k.diag.begin() + nf);
  kf.off.assign(k.off.begin(), k.off.begin() + nf - 1);
  mf.diag.assign(m.diag.begin(), m.diag.begin() + nf);
  mf.off.assign(m.off.begin(), m.off.begin() + nf - 1);
  return smallest_pair_1d(kf, mf);
}

}  // namespace detail

CapEigenResult classical_cap_eigenvalue(const CapCone& cone, const Mesh1D& mesh) {
  mesh.validate();
  if (std::abs(mesh.nodes.back() - cone.theta) > 1e-12)
    throw std::domain_error("mesh must end at the cone aperture");
  auto coarse = detail::solve_dirichlet_1d(cone.n, mesh);
  Mesh1D fine_mesh = mesh.refined();
  auto fine = detail::solve_dirichlet_1d(cone.n, fine_mesh);

  CapEigenResult r;
  r.mesh = mesh;
  r.lambda1 = fine.lambda + (fine.lambda - coarse.lambda) / 3.0;
  r.est_error = std::abs(fine.lambda - coarse.lambda) / 3.0;
  r.gamma = exponent_from_eigenvalue(r.lambda1, FracParams::classical_limit(cone.n));
  r.eigenfunction = coarse.vector;
  r.eigenfunction.push_back(0.0);  // Dirichlet node at theta
  double mx = 0.0;
  for (double v : r.eigenfunction) mx = std::max(mx, std::abs(v));
  double sign = 0.0;
  for (double v : r.eigenfunction)
    if (std::abs(v) == mx) {
      sign = v >= 0 ? 1.0 : -1.0;
      break;
    }
  for (auto& v : r.eigenfunction) v *= sign / mx;
  return r;
}

double classical_exponent(const CapCone& cone, const Mesh1D& mesh) {
  return classical_cap_eigenvalue(cone, mesh).gamma;
}

double aperture_from_exponent(int n, double gamma_target, int mesh_nodes) {
  if (n < 2) throw std::domain_error("aperture_from_exponent requires n >= 2");
  if (!(gamma_target > 0.0))
    throw std::domain_error("aperture_from_exponent requires a positive target");
  auto eval = [&](double theta) {
    CapCone cone(n, theta);
    return classical_exponent(cone, Mesh1D::uniform(theta, mesh_nodes));
  };
  double lo = 0.005 * kPi, hi = 0.995 * kPi;
  double glo = eval(lo), ghi = eval(hi);  // decreasing: glo > ghi
  if (gamma_target > glo || gamma_target < ghi)
    throw std::domain_error(
        "exponent target " + std::to_string(gamma_target) +
        " is outside the attainable range [" + std::to_string(ghi) + ", " +
        std::to_string(glo) + "] for apertures in [0.005 pi, 0.995 pi]");
  for (int it = 0; it < 64 && hi - lo > 1e-11; ++it) {
    double mid = 0.5 * (lo + hi);
    double g = eval(mid);
    if (std::abs(g - gamma_target) <= 1e-9) return mid;
    if (g > gamma_target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace conex
