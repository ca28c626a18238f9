#pragma once

namespace conex {

inline constexpr double kPi = 3.14159265358979323846;

/// Dimension n >= 2 together with a fractional order s in (0, 1).  The
/// classical Laplacian is represented as a separate limit mode with s = 1 so
/// that callers never pass s = 1 into formulas that divide by Gamma(1 - s).
struct FracParams {
  int n = 2;
  double s = 0.5;
  bool classical = false;

  static FracParams fractional(int n, double s);
  static FracParams classical_limit(int n);
};

/// ln Gamma(x) for x > 0.  Lanczos approximation (g = 7, 9 coefficients) with
/// the reflection formula below x = 1/2.
double log_gamma(double x);

/// Surface measure of the unit sphere S^{n-1} in R^n; n >= 1.
double sphere_area(int n);

/// Normalization constant of the integral fractional Laplacian,
///   2^{2s} s Gamma(n/2 + s) / (pi^{n/2} Gamma(1 - s)).
/// The raw overload accepts n >= 1; the n = 1 case is reachable only here.
double normalization_constant(int n, double s);
double normalization_constant(const FracParams& p);

/// Positive root gamma of t = gamma (gamma + n - 2s), evaluated in the
/// cancellation-free form t / (sqrt(((n-2s)/2)^2 + t) + (n-2s)/2).
double exponent_from_eigenvalue(double t, const FracParams& p);

/// Inverse map t = gamma (gamma + n - 2s) for gamma >= 0.
double eigenvalue_from_exponent(double gamma, const FracParams& p);

}  // namespace conex
