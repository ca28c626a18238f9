#include "conex/mu_zero.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "conex/cap_spectrum.hpp"
#include "conex/errors.hpp"
#include "conex/fem1d.hpp"
#include "conex/quadrature.hpp"
#include "conex/special_functions.hpp"

namespace conex {

namespace {

using detail::TriDiag;

// Load vector F_i = int N_i sin^{n-2} phi dphi over the mesh.
std::vector<double> load_vector(int n, const Mesh1D& mesh) {
  const int nn = static_cast<int>(mesh.nodes.size());
  std::vector<double> f(nn, 0.0);
  const QuadRule& g = gauss_legendre(3);
  for (int e = 0; e + 1 < nn; ++e) {
    double a = mesh.nodes[e], b = mesh.nodes[e + 1], h = b - a;
    for (size_t q = 0; q < g.x.size(); ++q) {
      double phi = a + 0.5 * h * (g.x[q] + 1.0);
      double w = 0.5 * h * g.w[q];
      if (n > 2) w *= std::pow(std::sin(phi), n - 2);
      f[e] += w * (b - phi) / h;
      f[e + 1] += w * (phi - a) / h;
    }
  }
  return f;
}

struct LinearSolve {
  std::vector<double> w;  // all nodes, w(theta) = 0
  double integral;        // int w sin^{n-2} over (0, theta), one meridian
};

// Solve (K - 2n M) w = F with the theta node eliminated.
LinearSolve solve_linearized(const CapCone& cone, const Mesh1D& mesh) {
  TriDiag k, m;
  detail::assemble_weighted_1d(cone.n, mesh, k, m);
  const int nf = static_cast<int>(mesh.nodes.size()) - 1;
  TriDiag a;
  a.diag.resize(nf);
  a.off.resize(nf - 1);
  for (int i = 0; i < nf; ++i) a.diag[i] = k.diag[i] - 2.0 * cone.n * m.diag[i];
  for (int i = 0; i + 1 < nf; ++i) a.off[i] = k.off[i] - 2.0 * cone.n * m.off[i];
  std::vector<double> f = load_vector(cone.n, mesh);
  LinearSolve out;
  out.w.assign(f.begin(), f.begin() + nf);
  detail::TriDiagFactor fac;
  fac.factor(a);
  fac.solve(out.w);
  out.integral = 0.0;
  for (int i = 0; i < nf; ++i) out.integral += out.w[i] * f[i];
  out.w.push_back(0.0);
  return out;
}

void require_admissible(const CapCone& cone, double lambda1) {
  if (lambda1 > 2.0 * cone.n + 1e-8) return;
  double gamma_threshold =
      exponent_from_eigenvalue(2.0 * cone.n, FracParams::classical_limit(cone.n));
  double theta_threshold = aperture_from_exponent(cone.n, gamma_threshold);
  throw AdmissibilityError(
      "mu0 is defined only while lambda1(theta) > 2n; for n = " +
      std::to_string(cone.n) + " this requires theta < " +
      std::to_string(theta_threshold) + " (got theta = " +
      std::to_string(cone.theta) + ")");
}

}  // namespace

MuZeroResult mu_zero_cap(const CapCone& cone, const Mesh1D& mesh) {
  mesh.validate();
  if (std::abs(mesh.nodes.back() - cone.theta) > 1e-12)
    throw std::domain_error("mesh must end at the cone aperture");
  CapEigenResult cap = classical_cap_eigenvalue(cone, mesh);
  require_admissible(cone, cap.lambda1);

  double meridian_factor = sphere_area(cone.n - 1);
  LinearSolve coarse = solve_linearized(cone, mesh);
  LinearSolve fine = solve_linearized(cone, mesh.refined());
  double mu_c = 1.0 / (meridian_factor * coarse.integral);
  double mu_f = 1.0 / (meridian_factor * fine.integral);

  MuZeroResult r;
  r.mesh = mesh;
  r.mu0 = mu_f + (mu_f - mu_c) / 3.0;
  r.est_error = std::abs(mu_f - mu_c) / 3.0;
  r.lambda1 = cap.lambda1;
  r.w = coarse.w;
  r.psi = coarse.w;
  double mx = *std::max_element(r.psi.begin(), r.psi.end());
  if (!(mx > 0.0)) throw NumericalError("linearized minimizer is not positive", mx);
  for (auto& v : r.psi) v /= mx;
  return r;
}

double mu_zero_quotient(const CapCone& cone, const Mesh1D& mesh,
                        const std::vector<double>& u) {
  mesh.validate();
  if (u.size() != mesh.nodes.size())
    throw std::domain_error("trial vector size must match the mesh");
  if (std::abs(u.back()) > 0.0)
    throw std::domain_error("trial must vanish at the aperture node");
  TriDiag k, m;
  detail::assemble_weighted_1d(cone.n, mesh, k, m);
  const int nn = static_cast<int>(mesh.nodes.size());
  double num = 0.0;
  for (int i = 0; i < nn; ++i) {
    double kv = k.diag[i] * u[i], mv = m.diag[i] * u[i];
    if (i > 0) {
      kv += k.off[i - 1] * u[i - 1];
      mv += m.off[i - 1] * u[i - 1];
    }
    if (i + 1 < nn) {
      kv += k.off[i] * u[i + 1];
      mv += m.off[i] * u[i + 1];
    }
    num += u[i] * (kv - 2.0 * cone.n * mv);
  }
  // Denominator by an independent 5-point rule on |interpolant| per cell.
  const QuadRule& g = gauss_legendre(5);
  double integral = 0.0;
  for (int e = 0; e + 1 < nn; ++e) {
    double a = mesh.nodes[e], b = mesh.nodes[e + 1], h = b - a;
    for (size_t q = 0; q < g.x.size(); ++q) {
      double phi = a + 0.5 * h * (g.x[q] + 1.0);
      double w = 0.5 * h * g.w[q];
      if (cone.n > 2) w *= std::pow(std::sin(phi), cone.n - 2);
      double val = u[e] * (b - phi) / h + u[e + 1] * (phi - a) / h;
      integral += w * std::abs(val);
    }
  }
  if (!(integral > 0.0)) throw std::domain_error("trial has vanishing integral");
  double meridian_factor = sphere_area(cone.n - 1);
  return num / (meridian_factor * integral * integral);
}

double mu_zero_rayleigh(const CapCone& cone, const Mesh1D& mesh) {
  mesh.validate();
  CapEigenResult cap = classical_cap_eigenvalue(cone, mesh);
  require_admissible(cone, cap.lambda1);
  // Fixed point of the Euler-Lagrange system (-lap - 2n) u = const: each pass
  // re-solves with the previous iterate's scaling and stops when the quotient
  // settles.
  std::vector<double> u(mesh.nodes.size());
  for (size_t i = 0; i < u.size(); ++i)
    u[i] = std::cos(0.5 * kPi * mesh.nodes[i] / cone.theta);
  u.back() = 0.0;
  double q_prev = 0.0;
  for (int it = 0; it < 50; ++it) {
    double q = mu_zero_quotient(cone, mesh, u);
    if (it > 0 && std::abs(q - q_prev) <= 1e-13 * std::abs(q)) return q;
    q_prev = q;
    LinearSolve next = solve_linearized(cone, mesh);
    u = next.w;
    double mx = *std::max_element(u.begin(), u.end());
    for (auto& v : u) v /= mx;
  }
  return q_prev;
}

double barrier_exponent(const CapCone& cone, double s, double mu0) {
  if (!(mu0 > 0.0)) throw std::domain_error("barrier_exponent requires mu0 > 0");
  FracParams p = FracParams::fractional(cone.n, s);
  return 2.0 * s - s * normalization_constant(p) / mu0;
}

}  // namespace conex
