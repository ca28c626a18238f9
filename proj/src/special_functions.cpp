#include "conex/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conex {

FracParams FracParams::fractional(int n, double s) {
  if (n < 2) throw std::domain_error("fractional order parameters require n >= 2");
  if (!(s > 0.0) || s > 1.0 - 1e-6)
    throw std::domain_error("fractional order s must lie in (0, 1 - 1e-6]");
  return FracParams{n, s, false};
}

FracParams FracParams::classical_limit(int n) {
  if (n < 2) throw std::domain_error("classical limit parameters require n >= 2");
  return FracParams{n, 1.0, true};
}

double log_gamma(double x) {
  // Lanczos, g = 7, 9 coefficients.
  static const double c[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (!(x > 0.0)) throw std::domain_error("log_gamma requires x > 0");
  if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  double z = x - 1.0;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  double t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double sphere_area(int n) {
  if (n < 1) throw std::domain_error("sphere_area requires n >= 1");
  return std::exp(std::log(2.0) + 0.5 * n * std::log(kPi) - log_gamma(0.5 * n));
}

double normalization_constant(int n, double s) {
  if (n < 1) throw std::domain_error("normalization_constant requires n >= 1");
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("normalization_constant requires s in (0, 1)");
  double ln = 2.0 * s * std::log(2.0) + std::log(s) + log_gamma(0.5 * n + s) -
              0.5 * n * std::log(kPi) - log_gamma(1.0 - s);
  return std::exp(ln);
}

double normalization_constant(const FracParams& p) {
  if (p.classical) return 0.0;  // Gamma(1 - s) pole: the constant vanishes in the limit
  return normalization_constant(p.n, p.s);
}

double exponent_from_eigenvalue(double t, const FracParams& p) {
  if (!(t >= 0.0)) throw std::domain_error("exponent_from_eigenvalue requires t >= 0");
  double half = 0.5 * (p.n - 2.0 * p.s);
  return t / (std::sqrt(half * half + t) + half);
}

double eigenvalue_from_exponent(double gamma, const FracParams& p) {
  if (!(gamma >= 0.0))
    throw std::domain_error("eigenvalue_from_exponent requires gamma >= 0");
  return gamma * (gamma + p.n - 2.0 * p.s);
}

}  // namespace conex
