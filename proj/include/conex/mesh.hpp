#pragma once

#include <vector>

namespace conex {

/// Spherical-cap cone: ambient dimension n >= 2 and aperture theta in (0, pi).
struct CapCone {
  int n;
  double theta;
  CapCone(int n, double theta);
};

/// Strictly increasing 1-D node set on [0, end] with nodes.front() == 0 and
/// nodes.back() == end, used for the colatitude interval.
struct Mesh1D {
  std::vector<double> nodes;

  static Mesh1D uniform(double end, int node_count);
  /// Mesh with every cell split in half, for two-level error estimation.
  Mesh1D refined() const;
  int cells() const { return static_cast<int>(nodes.size()) - 1; }
  void validate() const;
};

/// Tensor-product mesh on [0, pi] x [0, pi/2] (colatitude phi, elevation psi)
/// for the weighted half-sphere eigenproblem.  theta is always a phi node;
/// phi nodes are power-graded toward theta from both sides to resolve the
/// mixed-condition corner at (theta, 0), and psi nodes are graded toward the
/// degenerate-weight line psi = 0 as (pi/2) (j/M)^grading.
struct HalfSphereMesh {
  std::vector<double> phi;
  std::vector<double> psi;
  double theta = 0.0;
  double grading = 2.0;

  static HalfSphereMesh make(const CapCone& cone, int phi_cells, int psi_cells,
                             double grading = 2.0);
  /// Same layout law at half the resolution, for two-level error estimation.
  HalfSphereMesh coarsened() const;
  int phi_cells() const { return static_cast<int>(phi.size()) - 1; }
  int psi_cells() const { return static_cast<int>(psi.size()) - 1; }
  int node_count() const { return static_cast<int>(phi.size() * psi.size()); }
  int node_index(int i, int j) const { return j * static_cast<int>(phi.size()) + i; }
};

}  // namespace conex
