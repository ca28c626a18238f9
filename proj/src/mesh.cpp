#include "conex/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conex/special_functions.hpp"

namespace conex {

CapCone::CapCone(int n_, double theta_) : n(n_), theta(theta_) {
  if (n < 2) throw std::domain_error("CapCone requires n >= 2");
  if (!(theta > 0.0 && theta < kPi))
    throw std::domain_error("CapCone requires theta in (0, pi)");
}

Mesh1D Mesh1D::uniform(double end, int node_count) {
  if (!(end > 0.0)) throw std::domain_error("Mesh1D::uniform requires end > 0");
  if (node_count < 16) throw std::domain_error("Mesh1D requires >= 16 nodes");
  Mesh1D m;
  m.nodes.resize(node_count);
  for (int i = 0; i < node_count; ++i)
    m.nodes[i] = end * static_cast<double>(i) / (node_count - 1);
  m.nodes.back() = end;
  return m;
}

Mesh1D Mesh1D::refined() const {
  Mesh1D m;
  m.nodes.reserve(nodes.size() * 2 - 1);
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    m.nodes.push_back(nodes[i]);
    m.nodes.push_back(0.5 * (nodes[i] + nodes[i + 1]));
  }
  m.nodes.push_back(nodes.back());
  return m;
}

void Mesh1D::validate() const {
  if (nodes.size() < 16) throw std::domain_error("Mesh1D requires >= 16 nodes");
  if (nodes.front() != 0.0) throw std::domain_error("Mesh1D must start at 0");
  for (size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]))
      throw std::domain_error("Mesh1D nodes must be strictly increasing");
}

HalfSphereMesh HalfSphereMesh::make(const CapCone& cone, int phi_cells,
                                    int psi_cells, double grading) {
  if (phi_cells < 16 || psi_cells < 8)
    throw std::domain_error("HalfSphereMesh requires >= 16 phi cells and >= 8 psi cells");
  if (!(grading >= 1.0)) throw std::domain_error("HalfSphereMesh grading must be >= 1");
  HalfSphereMesh m;
  m.theta = cone.theta;
  m.grading = grading;

  int nl = static_cast<int>(std::lround(phi_cells * cone.theta / kPi));
  nl = std::clamp(nl, 4, phi_cells - 4);
  int nr = phi_cells - nl;
  m.phi.reserve(phi_cells + 1);
  for (int i = 0; i <= nl; ++i) {
    double t = static_cast<double>(nl - i) / nl;
    m.phi.push_back(cone.theta * (1.0 - t * t));
  }
  m.phi[0] = 0.0;
  m.phi[nl] = cone.theta;
  for (int j = 1; j <= nr; ++j) {
    double t = static_cast<double>(j) / nr;
    m.phi.push_back(cone.theta + (kPi - cone.theta) * t * t);
  }
  m.phi.back() = kPi;

  m.psi.reserve(psi_cells + 1);
  for (int j = 0; j <= psi_cells; ++j)
    m.psi.push_back(0.5 * kPi * std::pow(static_cast<double>(j) / psi_cells, grading));
  m.psi.front() = 0.0;
  m.psi.back() = 0.5 * kPi;
  return m;
}

HalfSphereMesh HalfSphereMesh::coarsened() const {
  // theta lies strictly inside (0, pi) whenever make() succeeded
  CapCone cone(2, theta);
  return make(cone, phi_cells() / 2, psi_cells() / 2, grading);
}

}  // namespace conex
