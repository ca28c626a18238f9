#include "conex/frac_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "conex/interp.hpp"
#include "conex/quadrature.hpp"
#include "conex/special_functions.hpp"

namespace conex {

namespace {

struct AngularFn {
  double theta = 0.0;
  double s = 0.5;
  const SampledAngular* samples = nullptr;  // null: half-space cos^s form

  double operator()(double phi) const {
    if (phi >= theta) return 0.0;
    if (!samples) return std::pow(std::cos(phi), s);
    return detail::eval_profile(samples->phi, samples->value, theta,
                                samples->edge_exponent, phi);
  }
};

AngularFn make_angular(const HomogeneousProfile& p) {
  AngularFn g;
  g.theta = p.cone.theta;
  g.s = p.s;
  g.samples = std::get_if<SampledAngular>(&p.g);
  return g;
}

void check_profile(const HomogeneousProfile& p) {
  if (!(p.s > 0.0) || p.s >= 1.0)
    throw std::domain_error("profile order s must lie in (0, 1)");
  if (!(p.gamma > 0.0) || !(p.gamma < 2.0 * p.s - 1e-12))
    throw std::domain_error("profile homogeneity must lie in (0, 2s)");
  if (const auto* sa = std::get_if<SampledAngular>(&p.g)) {
    if (sa->phi.size() < 2 || sa->phi.size() != sa->value.size())
      throw std::domain_error("sampled profile needs matching node/value arrays");
  }
}

struct EvalCtx {
  int n;
  double gamma, s, theta;
  AngularFn g;
  double r, phix;  // evaluation point
  double x1, xn;   // meridian coordinates (r sin phix, r cos phix)
  double ux;       // profile value at the point
};

double point_u(const EvalCtx& c, double zperp, double zn) {
  double nz = std::hypot(zperp, zn);
  if (nz < 1e-300) return 0.0;
  double gv = c.g(std::atan2(std::abs(zperp), zn));
  return gv == 0.0 ? 0.0 : std::pow(nz, c.gamma) * gv;
}

// Signed direction angles t where x + sigma rho (sin t, cos t) meets a
// boundary ray, from sin(t - eta) = -sigma (r/rho) sin(phix - eta) plus a
// positive-ray check; results in (-pi, pi].
void meridian_crossings(const EvalCtx& c, double rho, int sigma,
                        std::vector<double>* out) {
  for (double eta : {c.theta, -c.theta}) {
    double cc = -sigma * (c.r / rho) * std::sin(c.phix - eta);
    if (std::abs(cc) > 1.0) continue;
    double a = std::asin(cc);
    for (double t : {eta + a, eta + kPi - a}) {
      double z1 = c.x1 + sigma * rho * std::sin(t);
      double zn = c.xn + sigma * rho * std::cos(t);
      if (z1 * std::sin(eta) + zn * std::cos(eta) < -1e-12 * (c.r + rho))
        continue;
      out->push_back(std::remainder(t, 2.0 * kPi));
    }
  }
}

void sort_dedupe_interior(std::vector<double>* v, double lo, double hi) {
  std::sort(v->begin(), v->end());
  v->erase(std::unique(v->begin(), v->end(),
                       [](double a, double b) { return b - a < 1e-10; }),
           v->end());
  std::erase_if(*v, [&](double t) { return t < lo + 1e-9 || t > hi - 1e-9; });
}

bool near_apex(const EvalCtx& c, double rho) {
  return rho > 0.5 * c.r && rho < 2.0 * c.r;
}

// Splits of [0, pi] for the n = 2 angular integral; the integrand has period
// pi, so each full-circle crossing folds mod pi.
std::vector<double> splits_n2(const EvalCtx& c, double rho) {
  std::vector<double> raw;
  meridian_crossings(c, rho, +1, &raw);
  for (double& t : raw) {
    t = std::fmod(t, kPi);
    if (t < 0.0) t += kPi;
  }
  if (near_apex(c, rho)) raw.push_back(c.phix);
  sort_dedupe_interior(&raw, 0.0, kPi);
  return raw;
}

// Polar-angle splits for n >= 3: |t| of the meridian crossings of both
// difference branches, marking where the azimuthal kink enters or leaves.
std::vector<double> splits_alpha(const EvalCtx& c, double rho) {
  std::vector<double> raw;
  meridian_crossings(c, rho, +1, &raw);
  meridian_crossings(c, rho, -1, &raw);
  for (double& t : raw) t = std::abs(t);
  if (near_apex(c, rho)) {
    raw.push_back(c.phix);
    raw.push_back(kPi - c.phix);
  }
  sort_dedupe_interior(&raw, 0.0, kPi);
  return raw;
}

struct Panel {
  double a, b;
  int npts;
};

// One panel, dyadically thinned toward any end that carries a kink of the
// integrand.
void graded_panels(double a, double b, bool ka, bool kb, int n_full,
                   std::vector<Panel>* out) {
  double h = b - a;
  if (h < 1e-9 || !(ka || kb)) {
    out->push_back({a, b, h < 1e-9 ? 8 : n_full});
    return;
  }
  int thin = std::max(12, n_full / 4);
  double la = ka ? a + h / 8 : a;
  double lb = kb ? b - h / 8 : b;
  if (ka) {
    out->push_back({a, a + h / 64, thin});
    out->push_back({a + h / 64, la, thin});
  }
  out->push_back({la, lb, n_full});
  if (kb) {
    out->push_back({lb, b - h / 64, thin});
    out->push_back({b - h / 64, b, thin});
  }
}

template <class F>
double composite_over(double lo, double hi, const std::vector<double>& splits,
                      int n_full, F&& f) {
  std::vector<double> edges{lo};
  edges.insert(edges.end(), splits.begin(), splits.end());
  edges.push_back(hi);
  double sum = 0.0;
  std::vector<Panel> panels;
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    bool ka = k > 0;
    bool kb = k + 2 < edges.size();
    panels.clear();
    graded_panels(edges[k], edges[k + 1], ka, kb, n_full, &panels);
    for (const Panel& p : panels) {
      const QuadRule& q = gauss_legendre(p.npts);
      double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
      for (size_t i = 0; i < q.x.size(); ++i)
        sum += half * q.w[i] * f(mid + half * q.x[i]);
    }
  }
  return sum;
}

double angular_n2(const EvalCtx& c, double rho, int n_ang) {
  std::vector<double> splits = splits_n2(c, rho);
  auto f = [&](double t) {
    double st = std::sin(t), ct = std::cos(t);
    double up = point_u(c, c.x1 + rho * st, c.xn + rho * ct);
    double um = point_u(c, c.x1 - rho * st, c.xn - rho * ct);
    return 2.0 * c.ux - up - um;
  };
  return 2.0 * composite_over(0.0, kPi, splits, n_ang, f);
}

double angular_nd(const EvalCtx& c, double rho, int n_ang) {
  std::vector<double> asplits = splits_alpha(c, rho);
  bool on_axis = c.x1 < 1e-12 * c.r;
  bool vertical = std::abs(std::cos(c.theta)) < 1e-12;
  double tan2 = vertical ? 0.0 : std::pow(std::tan(c.theta), 2);
  int n_beta = std::max(12, n_ang / 2);
  int ma = c.n - 2, mb = c.n - 3;
  // int_0^pi sin^(n-3), for the azimuth-independent on-axis case
  double bn = std::sqrt(kPi) * std::exp(log_gamma(0.5 * (c.n - 2)) -
                                        log_gamma(0.5 * (c.n - 1)));
  auto fa = [&](double alpha) {
    double sa = std::sin(alpha), ca = std::cos(alpha);
    double inner;
    if (on_axis) {
      double up = point_u(c, rho * sa, c.xn + rho * ca);
      double um = point_u(c, rho * sa, c.xn - rho * ca);
      inner = bn * (2.0 * c.ux - up - um);
    } else {
      std::vector<double> bsplits;
      if (!vertical && sa > 1e-12) {
        for (int sigma : {1, -1}) {
          double q = c.xn + sigma * rho * ca;
          if (q * std::cos(c.theta) <= 0.0) continue;
          double cb = (q * q * tan2 - c.x1 * c.x1 - rho * rho * sa * sa) /
                      (2.0 * sigma * rho * c.x1 * sa);
          if (std::abs(cb) <= 1.0) bsplits.push_back(std::acos(cb));
        }
        sort_dedupe_interior(&bsplits, 0.0, kPi);
      }
      auto fb = [&](double beta) {
        double cosb = std::cos(beta), sinb = std::sin(beta);
        double pp = rho * sa;
        double up = point_u(c, std::hypot(c.x1 + pp * cosb, pp * sinb),
                            c.xn + rho * ca);
        double um = point_u(c, std::hypot(c.x1 - pp * cosb, pp * sinb),
                            c.xn - rho * ca);
        double w = mb == 0 ? 1.0 : std::pow(sinb, mb);
        return w * (2.0 * c.ux - up - um);
      };
      inner = composite_over(0.0, kPi, bsplits, n_beta, fb);
    }
    return (ma == 0 ? 1.0 : std::pow(sa, ma)) * inner;
  };
  return sphere_area(c.n - 2) * composite_over(0.0, kPi, asplits, n_ang, fa);
}

// Integral of the symmetric difference over the direction sphere.
double sphere_integral(const EvalCtx& c, double rho, int n_ang) {
  return c.n == 2 ? angular_n2(c, rho, n_ang) : angular_nd(c, rho, n_ang);
}

// int rho^(-1-2s) A(rho) over [lo, hi] on log-spaced Gauss panels, split at
// the critical radii where the crossing pattern changes.
double radial_log_integral(const EvalCtx& c, double lo, double hi,
                           int per_decade, int gauss, int n_ang,
                           const std::vector<double>& crits) {
  double decades = std::log10(hi / lo);
  int np = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
  std::vector<double> edges;
  edges.reserve(np + 4);
  for (int k = 0; k <= np; ++k)
    edges.push_back(lo * std::pow(10.0, decades * k / np));
  edges.back() = hi;
  for (double cr : crits)
    if (cr > lo * (1.0 + 1e-9) && cr < hi * (1.0 - 1e-9)) edges.push_back(cr);
  std::sort(edges.begin(), edges.end());
  edges.erase(
      std::unique(edges.begin(), edges.end(),
                  [](double a, double b) { return b <= a * (1.0 + 1e-9); }),
      edges.end());
  const QuadRule& q = gauss_legendre(gauss);
  double sum = 0.0;
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    double la = std::log(edges[k]), lb = std::log(edges[k + 1]);
    double mid = 0.5 * (la + lb), half = 0.5 * (lb - la);
    for (size_t i = 0; i < q.x.size(); ++i) {
      double l = mid + half * q.x[i];
      sum += half * q.w[i] * std::exp(-2.0 * c.s * l) *
             sphere_integral(c, std::exp(l), n_ang);
    }
  }
  return sum;
}

struct TailMoments {
  double ig = 0.0;  // int_S g
  double j0 = 0.0;  // int_S g (theta . axis)
};

TailMoments angular_moments(const EvalCtx& c) {
  std::vector<double> edges{0.0};
  for (int k = 1; k <= 8; ++k)
    edges.push_back(c.theta * (1.0 - std::pow(0.5, k)));
  edges.push_back(c.theta);
  const QuadRule& q = gauss_legendre(24);
  TailMoments tm;
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    double mid = 0.5 * (edges[k] + edges[k + 1]);
    double half = 0.5 * (edges[k + 1] - edges[k]);
    for (size_t i = 0; i < q.x.size(); ++i) {
      double phi = mid + half * q.x[i];
      double w = half * q.w[i] * c.g(phi);
      if (c.n > 2) w *= std::pow(std::sin(phi), c.n - 2);
      tm.ig += w;
      tm.j0 += w * std::cos(phi);
    }
  }
  double meridian = sphere_area(c.n - 1);
  tm.ig *= meridian;
  tm.j0 *= meridian;
  return tm;
}

double ray_distance(double r, double delta) {
  delta = std::abs(delta);
  return delta >= 0.5 * kPi ? r : r * std::sin(delta);
}

}  // namespace

double HomogeneousProfile::angular(double phi) const {
  return make_angular(*this)(phi);
}

void QuadratureSpec::validate() const {
  if (angular_nodes < 16 || radial_per_decade < 2 || radial_gauss < 2 ||
      !(rho_min > 0.0) || rho_min >= 1.0 || rho_max <= 1.0)
    throw std::domain_error("invalid quadrature spec");
}

QuadratureSpec QuadratureSpec::coarse() const {
  return {std::max(16, angular_nodes / 2), std::max(2, radial_per_decade / 2),
          rho_min, rho_max, std::max(3, radial_gauss / 2)};
}

HomogeneousProfile half_space_profile(int n, double s) {
  HomogeneousProfile p{s, CapCone(n, 0.5 * kPi), s, HalfSpaceTag{}};
  check_profile(p);
  return p;
}

HomogeneousProfile profile_from_extension(const CapCone& cone,
                                          const ExtensionEigenResult& result) {
  TraceProfile tp = trace_profile(result);
  if (std::abs(tp.theta - cone.theta) > 1e-12)
    throw std::domain_error("trace aperture does not match the cone");
  SampledAngular sa{std::move(tp.phi), std::move(tp.value), result.s};
  HomogeneousProfile p{result.gamma_s, cone, result.s, std::move(sa)};
  check_profile(p);
  return p;
}

OracleValue evaluate_fractional_laplacian(const HomogeneousProfile& p,
                                          const PolarPoint& pt,
                                          const QuadratureSpec& spec) {
  spec.validate();
  check_profile(p);
  if (!(pt.r > 0.0)) throw std::domain_error("evaluation radius must be positive");
  if (!(pt.phi >= 0.0) || pt.phi >= p.cone.theta - 0.01)
    throw std::domain_error("evaluation point must lie strictly inside the cone");

  EvalCtx c{p.cone.n,
            p.gamma,
            p.s,
            p.cone.theta,
            make_angular(p),
            pt.r,
            pt.phi,
            pt.r * std::sin(pt.phi),
            pt.r * std::cos(pt.phi),
            0.0};
  c.ux = std::pow(pt.r, p.gamma) * c.g(pt.phi);

  double dplus = ray_distance(pt.r, p.cone.theta - pt.phi);
  double dminus = ray_distance(pt.r, p.cone.theta + pt.phi);
  double dmin = std::min({dplus, dminus, pt.r});
  double rho_in = std::min(spec.rho_min, 0.45 * dmin);
  double s2 = 2.0 * p.s;

  // Second-order Taylor capture of the crossing-free core (0, rho_in]: the
  // symmetric difference is c0 rho^2 + c2 rho^4 + O(rho^6) there, and the
  // weighted mass of the c0 term dominates the whole integral as s -> 1.
  double ahat_a =
      sphere_integral(c, 0.5 * rho_in, spec.angular_nodes) / (0.25 * rho_in * rho_in);
  double ahat_b = sphere_integral(c, rho_in, spec.angular_nodes) / (rho_in * rho_in);
  double c0 = (4.0 * ahat_a - ahat_b) / 3.0;
  double c2 = (ahat_b - ahat_a) / (0.75 * rho_in * rho_in);
  double p2 = std::pow(rho_in, 2.0 - s2) / (2.0 - s2);
  double p4 = std::pow(rho_in, 4.0 - s2) / (4.0 - s2);

  std::vector<double> crits{dplus, dminus, pt.r};
  double fine =
      radial_log_integral(c, rho_in, spec.rho_max, spec.radial_per_decade,
                          spec.radial_gauss, spec.angular_nodes, crits);
  QuadratureSpec cs = spec.coarse();
  double coarse = radial_log_integral(c, rho_in, spec.rho_max, cs.radial_per_decade,
                                      cs.radial_gauss, cs.angular_nodes, crits);

  // Closed-form tail beyond rho_max from the homogeneous far field,
  // u(x + rho theta) ~ rho^gamma [g(theta) + (gamma+n-1) (x . theta)/rho g + ..]
  TailMoments tm = angular_moments(c);
  double cns = normalization_constant(p.cone.n, p.s);
  double omega = sphere_area(p.cone.n);
  double t_u = cns * omega * c.ux * std::pow(spec.rho_max, -s2) / s2;
  double t_g = -cns * tm.ig * std::pow(spec.rho_max, p.gamma - s2) / (s2 - p.gamma);
  double t_j = -cns * (p.gamma + p.cone.n - 1) * c.xn * tm.j0 *
               std::pow(spec.rho_max, p.gamma - 1.0 - s2) / (1.0 + s2 - p.gamma);

  OracleValue out;
  out.value = 0.5 * cns * (c0 * p2 + c2 * p4 + fine) + t_u + t_g + t_j;

  double noise = 4e-16 * (2.0 * std::abs(c.ux) + std::pow(pt.r, p.gamma)) * omega;
  double err_inner =
      0.5 * cns * (std::abs(c2) * p4 + 6.0 * noise / (rho_in * rho_in) * p2);
  double quad_err = 0.5 * cns * std::abs(fine - coarse);
  double qrel = (std::abs(p.gamma) + p.cone.n + 1) * pt.r / spec.rho_max;
  double tail_err = 3.0 * (std::abs(t_g) + std::abs(t_u)) * qrel * qrel;
  double scale = cns * std::pow(pt.r, p.gamma - s2);
  out.error_bound =
      err_inner + quad_err + tail_err + 1e-13 * (std::abs(out.value) + scale);
  out.accuracy_warning = out.error_bound > 0.1 * scale;
  return out;
}

double sharmonicity_residual(const HomogeneousProfile& p,
                             const std::vector<PolarPoint>& points,
                             const QuadratureSpec& spec) {
  if (points.size() < 3)
    throw std::domain_error("residual needs at least three interior points");
  double cns = normalization_constant(p.cone.n, p.s);
  double worst = 0.0;
  for (const PolarPoint& pt : points) {
    OracleValue v = evaluate_fractional_laplacian(p, pt, spec);
    double scale = cns * std::pow(pt.r, p.gamma - 2.0 * p.s);
    worst = std::max(worst, std::abs(v.value) / scale);
  }
  return worst;
}

BarrierReport barrier_sign_check(const CapCone& cone, double s,
                                 const MuZeroResult& mu,
                                 const std::vector<PolarPoint>& points,
                                 const QuadratureSpec& spec) {
  if (points.empty())
    throw std::domain_error("barrier check needs sample points");
  double peak = 0.0;
  for (double v : mu.psi) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0))
    throw std::domain_error("mu0 minimizer vanishes identically");
  SampledAngular sa{mu.mesh.nodes, mu.psi, 1.0};
  for (double& v : sa.value) v /= peak;
  double gstar = barrier_exponent(cone, s, mu.mu0);
  if (!(gstar > 0.0))
    throw std::domain_error("barrier homogeneity is not positive");
  HomogeneousProfile prof{gstar, cone, s, std::move(sa)};
  check_profile(prof);

  BarrierReport rep;
  rep.gamma_star = gstar;
  rep.tol = 1e-2 * normalization_constant(cone.n, s) / (2.0 * s - gstar);
  rep.max_value = -std::numeric_limits<double>::infinity();
  for (const PolarPoint& pt : points) {
    OracleValue v = evaluate_fractional_laplacian(prof, pt, spec);
    rep.max_value = std::max(rep.max_value, v.value);
    rep.max_error_bound = std::max(rep.max_error_bound, v.error_bound);
  }
  rep.nonpositive = rep.max_value <= rep.tol;
  return rep;
}

}  // namespace conex
