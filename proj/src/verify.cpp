#include "conex/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

#include "conex/asymptotics.hpp"
#include "conex/cap_spectrum.hpp"
#include "conex/errors.hpp"
#include "conex/extension_spectrum.hpp"
#include "conex/frac_oracle.hpp"
#include "conex/mesh.hpp"
#include "conex/mu_zero.hpp"
#include "conex/special_functions.hpp"

namespace conex {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Verdict {
  bool ok = false;
  std::string detail;
};

template <class F>
CheckResult timed_check(const char* name, double budget_seconds, F&& body) {
  CheckResult r;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Verdict v = body();
    r.passed = v.ok;
    r.detail = v.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > budget_seconds) {
    r.passed = false;
    r.detail += fmt(" [%.1f s exceeds the %.0f s budget]", r.seconds, budget_seconds);
  }
  return r;
}

}  // namespace

CheckResult criterion_classical_anchors() {
  return timed_check("classical-anchors", 5.0, [] {
    CapCone hemi(3, 0.5 * kPi);
    double lam =
        classical_cap_eigenvalue(hemi, Mesh1D::uniform(hemi.theta, 2000)).lambda1;
    double lam_err = std::abs(lam - 2.0);
    double worst = 0.0;
    for (double theta : {kPi / 8, kPi / 6, kPi / 4, kPi / 3, kPi / 2}) {
      CapCone cone(2, theta);
      double g = classical_exponent(cone, Mesh1D::uniform(theta, 2000));
      worst = std::max(worst, std::abs(g - 0.5 * kPi / theta));
    }
    bool ok = lam_err <= 1e-6 && worst <= 1e-6;
    return Verdict{ok, fmt("hemisphere eigenvalue err %.2e, max exponent err %.2e",
                           lam_err, worst)};
  });
}

CheckResult criterion_half_space_fractional() {
  return timed_check("half-space-fractional-anchor", 120.0, [] {
    double worst = 0.0;
    for (int n : {2, 3}) {
      CapCone cone(n, 0.5 * kPi);
      for (double s : {0.3, 0.5, 0.75, 0.9}) {
        double lam =
            fractional_cap_eigenvalue(cone, s, HalfSphereMesh::make(cone, 256, 128))
                .lambda1s;
        double target = s * (n - s);
        worst = std::max(worst, std::abs(lam - target) / target);
      }
    }
    return Verdict{worst <= 2e-3, fmt("max relative eigenvalue err %.2e", worst)};
  });
}

CheckResult criterion_mu_zero_closed_form() {
  return timed_check("mu0-closed-form", 10.0, [] {
    double worst_exact = 0.0;
    for (double theta : {kPi / 16, kPi / 8, kPi / 6}) {
      CapCone cone(2, theta);
      MuZeroResult mu = mu_zero_cap(cone, Mesh1D::uniform(theta, 800));
      double exact = 4.0 / (std::tan(2.0 * theta) - 2.0 * theta);
      worst_exact = std::max(worst_exact, std::abs(mu.mu0 - exact) / exact);
    }
    double worst_cross = 0.0;
    const std::pair<int, double> cases[] = {
        {2, kPi / 16}, {2, kPi / 8}, {2, kPi / 6}, {3, kPi / 8}};
    for (auto [n, theta] : cases) {
      CapCone cone(n, theta);
      Mesh1D mesh = Mesh1D::uniform(theta, 800);
      MuZeroResult mu = mu_zero_cap(cone, mesh);
      double linear = mu_zero_quotient(cone, mesh, mu.psi);
      double rayleigh = mu_zero_rayleigh(cone, mesh);
      worst_cross = std::max(worst_cross, std::abs(linear - rayleigh) / rayleigh);
    }
    bool ok = worst_exact <= 1e-5 && worst_cross <= 1e-6;
    return Verdict{ok, fmt("closed-form rel err %.2e, cross-method rel err %.2e",
                           worst_exact, worst_cross)};
  });
}

CheckResult criterion_wide_limit() {
  return timed_check("wide-cone-limit", 60.0, [] {
    CapCone cone(2, 0.5 * kPi);
    SweepTable table = limit_sweep(cone, {0.9, 0.95, 0.99, 0.999});
    CapEigenResult cap =
        classical_cap_eigenvalue(cone, Mesh1D::uniform(cone.theta, 2000));
    LimitEstimate est = limit_estimates(table, cap, nullptr);
    double gap = std::abs(est.gamma_bar_est - 1.0);
    double last_ratio = table.rows.back().ratio;
    bool ok = gap <= 0.02 && last_ratio <= 0.01;
    return Verdict{ok, fmt("extrapolated exponent limit off by %.2e, "
                           "ratio at s=0.999 is %.2e",
                           gap, last_ratio)};
  });
}

CheckResult criterion_narrow_limit() {
  return timed_check("narrow-cone-limit", 180.0, [] {
    CapCone cone(2, kPi / 8);
    SweepTable table = limit_sweep(cone, {0.9, 0.99, 0.995, 0.999});
    CapEigenResult cap =
        classical_cap_eigenvalue(cone, Mesh1D::uniform(cone.theta, 2000));
    MuZeroResult mu = mu_zero_cap(cone, Mesh1D::uniform(cone.theta, 800));
    LimitEstimate est = limit_estimates(table, cap, &mu);
    double mu_exact = 16.0 / (4.0 - kPi);
    double gamma_gap = std::abs(table.rows.back().gamma_s - 2.0);
    double mu_rel = std::abs(est.mu_est - mu_exact) / mu_exact;
    bool ok = gamma_gap <= 0.05 && mu_rel <= 0.10;
    return Verdict{ok, fmt("gamma_s(0.999) off 2 by %.2e, "
                           "mu estimate rel err %.2e",
                           gamma_gap, mu_rel)};
  });
}

CheckResult criterion_monotonicity() {
  return timed_check("monotonicity-bounds", 300.0, [] {
    const std::vector<double> thetas{kPi / 8, kPi / 4, kPi / 2, 0.75 * kPi};
    const std::vector<double> ss{0.3, 0.5, 0.7, 0.9, 0.99};
    bool ok = true;
    std::string note;
    for (double theta : thetas) {
      CapCone cone(2, theta);
      double gamma_cl = classical_exponent(cone, Mesh1D::uniform(theta, 2000));
      double mu0 = 0.0;
      bool admissible = false;
      try {
        mu0 = mu_zero_cap(cone, Mesh1D::uniform(theta, 800)).mu0;
        admissible = true;
      } catch (const AdmissibilityError&) {
      }
      double prev = 0.0;
      for (size_t k = 0; k < ss.size(); ++k) {
        double s = ss[k];
        double g =
            fractional_exponent(cone, s, HalfSphereMesh::make(cone, 96, 48));
        if (k > 0 && g < prev - 1e-3) {
          ok = false;
          note += fmt(" [not monotone at theta=%.4f s=%.2f]", theta, s);
        }
        if (g > gamma_cl + 1e-3) {
          ok = false;
          note += fmt(" [exceeds classical at theta=%.4f s=%.2f]", theta, s);
        }
        if (!(g < 2.0 * s)) {
          ok = false;
          note += fmt(" [reaches 2s at theta=%.4f s=%.2f]", theta, s);
        }
        if (admissible && g > barrier_exponent(cone, s, mu0) + 1e-3) {
          ok = false;
          note += fmt(" [exceeds barrier bound at theta=%.4f s=%.2f]", theta, s);
        }
        prev = g;
      }
    }
    if (note.empty())
      note = "monotone in s, below the classical exponent, below 2s, below "
             "the barrier bound";
    return Verdict{ok, note};
  });
}

CheckResult criterion_acf() {
  return timed_check("acf-minimum", 300.0, [] {
    auto [nu1, arg1] = acf_value(2, 1.0);
    double nu_err = std::abs(nu1 - 1.0), arg_err = std::abs(arg1 - 0.5 * kPi);
    bool ok = nu_err <= 1e-6 && arg_err <= 1e-6;
    std::string note = fmt("classical (nu, argmin) err (%.2e, %.2e)", nu_err, arg_err);
    double prev_dist = 0.0;
    const std::vector<double> ss{0.75, 0.9, 0.99};
    for (size_t i = 0; i < ss.size(); ++i) {
      double s = ss[i];
      auto [nu, arg] = acf_value(2, s);
      (void)arg;
      double lower = std::max(0.5 * s, s - 0.25) - 1e-3;
      if (!(nu >= lower && nu <= s + 1e-3)) {
        ok = false;
        note += fmt(" [nu=%.6f outside bounds at s=%.2f]", nu, s);
      }
      double dist = std::abs(nu - 1.0);
      if (i > 0 && !(dist < prev_dist)) {
        ok = false;
        note += fmt(" [|nu-1| not decreasing at s=%.2f]", s);
      }
      note += fmt("; nu(%.2f)=%.6f", s, nu);
      prev_dist = dist;
    }
    return Verdict{ok, note};
  });
}

CheckResult criterion_oracle() {
  return timed_check("oracle-residuals", 120.0, [] {
    HomogeneousProfile hs = half_space_profile(2, 0.7);
    std::vector<PolarPoint> pts{{1.0, 0.0},
                                {1.0, 0.12 * kPi},
                                {1.0, 0.25 * kPi},
                                {0.8, 0.35 * kPi},
                                {1.25, 0.45 * kPi}};
    double res_hs = sharmonicity_residual(hs, pts);
    bool ok = res_hs <= 1e-3;
    std::string note = fmt("half-space residual %.2e", res_hs);

    CapCone quarter(2, kPi / 4);
    ExtensionEigenResult lo =
        fractional_cap_eigenvalue(quarter, 0.5, HalfSphereMesh::make(quarter, 48, 24));
    ExtensionEigenResult hi =
        fractional_cap_eigenvalue(quarter, 0.5, HalfSphereMesh::make(quarter, 192, 96));
    std::vector<PolarPoint> pts2{{1.0, 0.05}, {1.0, 0.30}, {1.0, 0.60}};
    double res_lo = sharmonicity_residual(profile_from_extension(quarter, lo), pts2);
    double res_hi = sharmonicity_residual(profile_from_extension(quarter, hi), pts2);
    if (!(res_hi < res_lo)) ok = false;
    note += fmt(", extension-profile residuals %.2e -> %.2e", res_lo, res_hi);

    CapCone narrow(2, kPi / 8);
    MuZeroResult mu = mu_zero_cap(narrow, Mesh1D::uniform(narrow.theta, 600));
    BarrierReport rep = barrier_sign_check(
        narrow, 0.99, mu,
        {{1.0, 0.0}, {1.0, 0.1}, {1.0, 0.2}, {1.0, 0.3}, {1.0, 0.37}});
    if (!rep.nonpositive) ok = false;
    note += fmt(", barrier max %.3e (tol %.3e)", rep.max_value, rep.tol);
    return Verdict{ok, note};
  });
}

CheckResult criterion_constant_asymptotics() {
  return timed_check("constant-asymptotics", 1.0, [] {
    double worst = 0.0;
    for (int n : {2, 3}) {
      double ratio = normalization_constant(n, 0.999) * sphere_area(n) /
                     (4.0 * n * (1.0 - 0.999));
      worst = std::max(worst, std::abs(ratio - 1.0));
    }
    double a1 = std::abs(normalization_constant(1, 0.5) - 1.0 / kPi);
    double a2 = std::abs(normalization_constant(2, 0.5) - 1.0 / (2.0 * kPi));
    bool ok = worst <= 0.02 && a1 <= 1e-12 && a2 <= 1e-12;
    return Verdict{ok, fmt("limit ratio off by %.2e, anchor errs %.1e / %.1e",
                           worst, a1, a2)};
  });
}

std::vector<std::string> suite_names() {
  return {"anchors", "monotonicity", "limits", "acf", "oracle"};
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  if (suite == "anchors")
    return {criterion_classical_anchors(), criterion_half_space_fractional(),
            criterion_mu_zero_closed_form(), criterion_constant_asymptotics()};
  if (suite == "monotonicity") return {criterion_monotonicity()};
  if (suite == "limits")
    return {criterion_wide_limit(), criterion_narrow_limit()};
  if (suite == "acf") return {criterion_acf()};
  if (suite == "oracle") return {criterion_oracle()};
  if (suite == "all")
    return {criterion_classical_anchors(),  criterion_half_space_fractional(),
            criterion_mu_zero_closed_form(), criterion_wide_limit(),
            criterion_narrow_limit(),        criterion_monotonicity(),
            criterion_acf(),                 criterion_oracle(),
            criterion_constant_asymptotics()};
  throw std::domain_error("unknown suite '" + suite +
                          "'; expected anchors, monotonicity, limits, acf, "
                          "oracle, or all");
}

}  // namespace conex
