#include "conex/extension_spectrum.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "conex/errors.hpp"
#include "conex/interp.hpp"
#include "conex/quadrature.hpp"
#include "conex/special_functions.hpp"

namespace conex {

namespace {

// sin(x)/x, stable near 0.
double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

struct PsiRowQuad {
  // per quadrature point: measure (weight included), 1/cos^2, and the two
  // linear shape values / derivative signs
  std::vector<double> w, inv_cos2, n0, n1;
  double h = 0.0;
};

PsiRowQuad psi_row_quadrature(int n, double s, double p0, double p1, bool bottom) {
  PsiRowQuad row;
  double h = p1 - p0;
  row.h = h;
  double b = 1.0 - 2.0 * s;
  if (bottom) {
    // psi = h (1 + x)/2; the psi^{1-2s} factor is integrated exactly, the
    // smooth remainder (sin psi / psi)^{1-2s} cos^{n-1} psi at the nodes
    QuadRule gj = gauss_jacobi_plus(5, b);
    double scale = std::pow(0.5 * h, b + 1.0);
    for (size_t q = 0; q < gj.x.size(); ++q) {
      double psi = 0.5 * h * (1.0 + gj.x[q]);
      double smooth = std::pow(sinc(psi), b) * std::pow(std::cos(psi), n - 1);
      row.w.push_back(scale * gj.w[q] * smooth);
      double c = std::cos(psi);
      row.inv_cos2.push_back(1.0 / (c * c));
      row.n0.push_back((p1 - psi) / h);
      row.n1.push_back((psi - p0) / h);
    }
  } else {
    const QuadRule& g = gauss_legendre(5);
    for (size_t q = 0; q < g.x.size(); ++q) {
      double psi = p0 + 0.5 * h * (g.x[q] + 1.0);
      double c = std::cos(psi);
      row.w.push_back(0.5 * h * g.w[q] * std::pow(std::sin(psi), b) *
                      std::pow(c, n - 1));
      row.inv_cos2.push_back(1.0 / (c * c));
      row.n0.push_back((p1 - psi) / h);
      row.n1.push_back((psi - p0) / h);
    }
  }
  return row;
}

}  // namespace

WeightedForms assemble_weighted_forms(const CapCone& cone, double s,
                                      const HalfSphereMesh& mesh) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("assemble_weighted_forms requires s in (0, 1)");
  const int np = static_cast<int>(mesh.phi.size());
  const int mp = static_cast<int>(mesh.psi.size());
  const int total = np * mp;

  std::vector<int> dof(total, -1);
  std::vector<int> free_nodes;
  free_nodes.reserve(total);
  for (int j = 0; j < mp; ++j)
    for (int i = 0; i < np; ++i) {
      bool dirichlet = (j == 0) && (mesh.phi[i] >= mesh.theta - 1e-12);
      if (!dirichlet) {
        dof[mesh.node_index(i, j)] = static_cast<int>(free_nodes.size());
        free_nodes.push_back(mesh.node_index(i, j));
      }
    }

  const QuadRule& gphi = gauss_legendre(3);
  std::vector<Eigen::Triplet<double>> tk, tm;
  tk.reserve(static_cast<size_t>(total) * 9);
  tm.reserve(static_cast<size_t>(total) * 9);

  for (int j = 0; j + 1 < mp; ++j) {
    PsiRowQuad row =
        psi_row_quadrature(cone.n, s, mesh.psi[j], mesh.psi[j + 1], j == 0);
    const size_t nq = row.w.size();
    // psi-direction 1-D integrals shared by the whole row
    double wq_sum = 0.0, pc[2][2] = {{0, 0}, {0, 0}}, pm[2][2] = {{0, 0}, {0, 0}};
    for (size_t q = 0; q < nq; ++q) {
      wq_sum += row.w[q];
      double nv[2] = {row.n0[q], row.n1[q]};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          pm[a][b] += row.w[q] * nv[a] * nv[b];
          pc[a][b] += row.w[q] * row.inv_cos2[q] * nv[a] * nv[b];
        }
    }
    double dpsi[2] = {-1.0 / row.h, 1.0 / row.h};

    for (int i = 0; i + 1 < np; ++i) {
      double f0 = mesh.phi[i], f1 = mesh.phi[i + 1], hf = f1 - f0;
      double fm[2][2] = {{0, 0}, {0, 0}}, wf_sum = 0.0;
      for (size_t q = 0; q < gphi.x.size(); ++q) {
        double phi = f0 + 0.5 * hf * (gphi.x[q] + 1.0);
        double w = 0.5 * hf * gphi.w[q];
        if (cone.n > 2) w *= std::pow(std::sin(phi), cone.n - 2);
        double nv[2] = {(f1 - phi) / hf, (phi - f0) / hf};
        wf_sum += w;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) fm[a][b] += w * nv[a] * nv[b];
      }
      double dphi[2] = {-1.0 / hf, 1.0 / hf};

      // local nodes: (phi corner af, psi corner ap)
      int gid[2][2] = {{mesh.node_index(i, j), mesh.node_index(i, j + 1)},
                       {mesh.node_index(i + 1, j), mesh.node_index(i + 1, j + 1)}};
      for (int af = 0; af < 2; ++af)
        for (int ap = 0; ap < 2; ++ap) {
          int ra = dof[gid[af][ap]];
          if (ra < 0) continue;
          for (int bf = 0; bf < 2; ++bf)
            for (int bp = 0; bp < 2; ++bp) {
              int rb = dof[gid[bf][bp]];
              if (rb < 0) continue;
              double kval = fm[af][bf] * dpsi[ap] * dpsi[bp] * wq_sum +
                            dphi[af] * dphi[bf] * wf_sum * pc[ap][bp];
              double mval = fm[af][bf] * pm[ap][bp];
              tk.emplace_back(ra, rb, kval);
              tm.emplace_back(ra, rb, mval);
            }
        }
    }
  }

  WeightedForms forms;
  const int nfree = static_cast<int>(free_nodes.size());
  forms.stiffness.resize(nfree, nfree);
  forms.mass.resize(nfree, nfree);
  forms.stiffness.setFromTriplets(tk.begin(), tk.end());
  forms.mass.setFromTriplets(tm.begin(), tm.end());
  forms.free_nodes = std::move(free_nodes);
  return forms;
}

EigenPair smallest_eigenpair(const SparseMat& stiffness, const SparseMat& mass,
                             const EigenPairOptions& opt) {
  const int n = static_cast<int>(stiffness.rows());
  if (n == 0 || stiffness.cols() != n || mass.rows() != n || mass.cols() != n)
    throw std::domain_error("smallest_eigenpair requires square matrices of equal size");
  for (int i = 0; i < n; ++i) {
    double d = stiffness.coeff(i, i);
    if (!(d > 0.0))
      throw std::domain_error("stiffness matrix has a non-positive diagonal");
  }

  Eigen::SparseMatrix<double> k_col = stiffness;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor;
  factor.compute(k_col);
  if (factor.info() != Eigen::Success)
    throw NumericalError("sparse factorization of the stiffness form failed", 0.0);

  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd mx = mass * x;
  x /= std::sqrt(x.dot(mx));
  double lambda = 0.0, lambda_prev = -1.0;
  for (int it = 1; it <= opt.max_outer; ++it) {
    mx = mass * x;
    Eigen::VectorXd y = factor.solve(mx);
    Eigen::VectorXd my = mass * y;
    double ymy = y.dot(my);
    if (!(ymy > 0.0))
      throw NumericalError("inverse iteration produced a degenerate iterate", 0.0);
    lambda = y.dot(mx) / ymy;  // y'Ky = y'Mx for the direct solve
    double inv_norm = 1.0 / std::sqrt(ymy);
    x = y * inv_norm;
    bool settled = std::abs(lambda - lambda_prev) <= opt.rayleigh_tol * std::abs(lambda);
    lambda_prev = lambda;
    // residual ||Kx - lambda Mx|| / ||Mx||, reusing Kx = (M x_prev) * inv_norm
    double residual = (mx * inv_norm - lambda * (my * inv_norm)).norm() /
                      ((my * inv_norm).norm());
    if (settled && residual <= opt.residual_tol) {
      EigenPair out;
      out.lambda = lambda;
      out.vector = x;
      out.iterations = it;
      out.residual = residual;
      return out;
    }
  }
  Eigen::VectorXd kx = stiffness * x;
  mx = mass * x;
  throw NumericalError("inverse iteration did not converge within the outer cap",
                       (kx - lambda * mx).norm() / mx.norm());
}

ExtensionEigenResult fractional_cap_eigenvalue(const CapCone& cone, double s,
                                               const HalfSphereMesh& mesh) {
  if (!(s > 0.0 && s <= 0.999))
    throw std::domain_error("fractional_cap_eigenvalue requires s in (0, 0.999]");
  if (std::abs(mesh.theta - cone.theta) > 1e-12)
    throw std::domain_error("mesh aperture must match the cone");

  WeightedForms fine = assemble_weighted_forms(cone, s, mesh);
  EigenPair fine_pair = smallest_eigenpair(fine.stiffness, fine.mass);
  HalfSphereMesh cmesh = mesh.coarsened();
  WeightedForms coarse = assemble_weighted_forms(cone, s, cmesh);
  EigenPair coarse_pair = smallest_eigenpair(coarse.stiffness, coarse.mass);

  ExtensionEigenResult r;
  r.mesh = mesh;
  r.lambda1s = fine_pair.lambda + (fine_pair.lambda - coarse_pair.lambda) / 3.0;
  r.est_error = std::abs(fine_pair.lambda - coarse_pair.lambda) / 3.0;
  r.gamma_s = exponent_from_eigenvalue(r.lambda1s, FracParams::fractional(cone.n, s));
  r.iterations = fine_pair.iterations;
  r.s = s;

  r.eigenvector.assign(mesh.node_count(), 0.0);
  double mx = 0.0;
  for (size_t k = 0; k < fine.free_nodes.size(); ++k)
    mx = std::max(mx, std::abs(fine_pair.vector(static_cast<int>(k))));
  double sign = 1.0;
  for (size_t k = 0; k < fine.free_nodes.size(); ++k)
    if (std::abs(fine_pair.vector(static_cast<int>(k))) == mx) {
      sign = fine_pair.vector(static_cast<int>(k)) >= 0 ? 1.0 : -1.0;
      break;
    }
  for (size_t k = 0; k < fine.free_nodes.size(); ++k)
    r.eigenvector[fine.free_nodes[k]] =
        sign * fine_pair.vector(static_cast<int>(k)) / mx;
  return r;
}

double fractional_exponent(const CapCone& cone, double s,
                           const HalfSphereMesh& mesh) {
  return fractional_cap_eigenvalue(cone, s, mesh).gamma_s;
}

double TraceProfile::operator()(double phi_eval) const {
  if (!(phi_eval >= 0.0 && phi_eval <= kPi + 1e-12))
    throw std::domain_error("trace profile argument must lie in [0, pi]");
  return detail::eval_profile(phi, value, theta, s, phi_eval);
}

TraceProfile trace_profile(const ExtensionEigenResult& result) {
  TraceProfile t;
  t.theta = result.mesh.theta;
  const auto& mesh = result.mesh;
  t.s = result.s;
  for (size_t i = 0; i < mesh.phi.size(); ++i) {
    t.phi.push_back(mesh.phi[i]);
    t.value.push_back(result.eigenvector[mesh.node_index(static_cast<int>(i), 0)]);
  }
  double mx = 0.0;
  for (double v : t.value) mx = std::max(mx, std::abs(v));
  if (!(mx > 0.0)) throw NumericalError("trace of the eigenfunction vanishes", 0.0);
  for (auto& v : t.value) v /= mx;
  return t;
}

}  // namespace conex
