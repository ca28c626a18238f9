#pragma once

#include <vector>

namespace conex {

struct QuadRule {
  std::vector<double> x, w;
};

/// Gauss-Legendre rule on [-1, 1].  Cached per point count.
const QuadRule& gauss_legendre(int npts);

/// Gauss-Jacobi rule on [-1, 1] for the one-sided weight (1 + x)^beta,
/// beta > -1, built by Golub-Welsch from the three-term recurrence.  Exact for
/// polynomials of degree <= 2 npts - 1 against that weight, which is how the
/// integrable endpoint singularity of the extension problem is handled.
QuadRule gauss_jacobi_plus(int npts, double beta);

}  // namespace conex
