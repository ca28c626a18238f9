#pragma once

// Shared 1-D P1 finite-element kernel for the weighted colatitude problems:
// symmetric tridiagonal forms, an LDL^T solver, and inverse power iteration.

#include <vector>

#include "conex/mesh.hpp"

namespace conex::detail {

struct TriDiag {
  std::vector<double> diag, off;
};

struct TriDiagFactor {
  std::vector<double> d, l;
  void factor(const TriDiag& t);
  void solve(std::vector<double>& x) const;
};

/// Stiffness and mass forms for weight sin^{n-2} phi on all mesh nodes
/// (no boundary conditions applied).  3-point Gauss per cell.
void assemble_weighted_1d(int n, const Mesh1D& mesh, TriDiag& stiffness,
                          TriDiag& mass);

void tridiag_apply(const TriDiag& t, const std::vector<double>& x,
                   std::vector<double>& y);

struct SmallestPair1D {
  double lambda;
  std::vector<double> vector;
  int iterations;
};

/// Smallest generalized eigenpair of (stiffness, mass) by inverse power
/// iteration with a direct tridiagonal inner solve.  Throws NumericalError
/// with the residual when the 10000-iteration cap is hit.
SmallestPair1D smallest_pair_1d(const TriDiag& stiffness, const TriDiag& mass);

}  // namespace conex::detail
