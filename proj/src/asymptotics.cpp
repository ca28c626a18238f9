#include "conex/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "conex/errors.hpp"
#include "conex/extension_spectrum.hpp"
#include "conex/special_functions.hpp"

namespace conex {

namespace {

int worker_count(int jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  int w = hw ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("CONE_EXPONENTS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) w = static_cast<int>(std::min<long>(v, 64));
  }
  return std::max(1, std::min(w, jobs));
}

// Independent cells fan out to a worker pool; each cell writes only its own
// slot, so the result is identical for any worker count.
template <class F>
void parallel_for(int jobs, F&& f) {
  int w = worker_count(jobs);
  if (w <= 1) {
    for (int i = 0; i < jobs; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto drain = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= jobs) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int t = 0; t < w; ++t) pool.emplace_back(drain);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  double xm = 0.0, ym = 0.0;
  size_t m = x.size();
  for (size_t i = 0; i < m; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= m;
  ym /= m;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < m; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  for (size_t i = 0; i < m; ++i) {
    double d = y[i] - fit.intercept - fit.slope * x[i];
    fit.residual += d * d;
  }
  fit.residual = std::sqrt(fit.residual);
  return fit;
}

}  // namespace

ConeClass classify_cone(const CapCone& cone, const Mesh1D& mesh) {
  double g = classical_exponent(cone, mesh);
  return g >= 2.0 - 1e-9 ? ConeClass::narrow : ConeClass::wide;
}

AcfCurve acf_curve(int n, double s, const AcfParams& prm) {
  if (prm.grid_size < 9 || prm.grid_size % 2 == 0)
    throw std::domain_error("aperture grid must be odd and at least 9");
  if (!(s > 0.0) || s > 1.0)
    throw std::domain_error("s must lie in (0, 1]");
  const bool classical = s == 1.0;
  const int k_count = prm.grid_size;

  AcfCurve curve;
  curve.n = n;
  curve.s = s;
  curve.theta_grid.resize(k_count);
  for (int k = 0; k < k_count; ++k)
    curve.theta_grid[k] = kPi * (0.02 + 0.96 * k / (k_count - 1));

  auto eval_gamma = [&](double theta) {
    CapCone cone(n, theta);
    try {
      if (classical)
        return classical_exponent(cone, Mesh1D::uniform(theta, prm.cap_nodes));
      return fractional_exponent(
          cone, s, HalfSphereMesh::make(cone, prm.phi_cells, prm.psi_cells));
    } catch (const NumericalError& e) {
      throw NumericalError(
          std::string(e.what()) + " (aperture theta = " + std::to_string(theta) + ")",
          e.residual());
    }
  };

  curve.gamma_s.resize(k_count);
  parallel_for(k_count,
               [&](int k) { curve.gamma_s[k] = eval_gamma(curve.theta_grid[k]); });

  curve.pair_mean.resize(k_count);
  for (int k = 0; k < k_count; ++k)
    curve.pair_mean[k] = 0.5 * (curve.gamma_s[k] + curve.gamma_s[k_count - 1 - k]);

  int imin = 0;
  for (int k = 1; k < k_count; ++k)
    if (curve.pair_mean[k] < curve.pair_mean[imin]) imin = k;
  const int center = k_count / 2;
  if (curve.pair_mean[center] <= curve.pair_mean[imin] + 1e-9) {
    curve.nu_acf = curve.pair_mean[center];
    curve.argmin_theta = 0.5 * kPi;
    return curve;
  }

  auto pair_value = [&](double theta) {
    return 0.5 * (eval_gamma(theta) + eval_gamma(kPi - theta));
  };
  double a = curve.theta_grid[std::max(imin - 1, 0)];
  double b = curve.theta_grid[std::min(imin + 1, k_count - 1)];
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = pair_value(x1), f2 = pair_value(x2);
  while (b - a > 1e-4) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = pair_value(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = pair_value(x2);
    }
  }
  curve.argmin_theta = f1 <= f2 ? x1 : x2;
  curve.nu_acf = std::min({f1, f2, curve.pair_mean[imin]});
  return curve;
}

std::pair<double, double> acf_value(int n, double s, const AcfParams& prm) {
  AcfCurve curve = acf_curve(n, s, prm);
  return {curve.nu_acf, curve.argmin_theta};
}

SweepTable limit_sweep(const CapCone& cone, const std::vector<double>& s_list,
                       const SweepParams& prm) {
  if (s_list.empty()) throw std::domain_error("empty s list");
  for (size_t i = 0; i < s_list.size(); ++i) {
    if (!(s_list[i] > 0.0) || s_list[i] > 0.999 + 1e-12)
      throw std::domain_error("sweep s values must lie in (0, 0.999]");
    if (i > 0 && s_list[i] <= s_list[i - 1])
      throw std::domain_error("sweep s values must increase");
  }

  double mu0 = 0.0;
  bool admissible = false;
  try {
    MuZeroResult mu =
        mu_zero_cap(cone, Mesh1D::uniform(cone.theta, prm.mu_nodes));
    mu0 = mu.mu0;
    admissible = true;
  } catch (const AdmissibilityError&) {
  }

  SweepTable table{cone, {}};
  table.rows.resize(s_list.size());
  parallel_for(static_cast<int>(s_list.size()), [&](int i) {
    double s = s_list[i];
    ExtensionEigenResult res = fractional_cap_eigenvalue(
        cone, s, HalfSphereMesh::make(cone, prm.phi_cells, prm.psi_cells));
    SweepRow row;
    row.s = s;
    row.lambda1s = res.lambda1s;
    row.gamma_s = res.gamma_s;
    row.cns = normalization_constant(cone.n, s);
    row.ratio = row.cns / (2.0 * s - res.gamma_s);
    row.est_error = res.est_error;
    if (admissible) {
      row.gamma_star = barrier_exponent(cone, s, mu0);
      row.has_gamma_star = true;
    }
    table.rows[i] = row;
  });
  return table;
}

LimitEstimate limit_estimates(const SweepTable& table, const CapEigenResult& cap,
                              const MuZeroResult* mu) {
  int usable = 0;
  for (const SweepRow& row : table.rows)
    if (row.s >= 0.9 - 1e-12) ++usable;
  if (usable < 3)
    throw std::domain_error("limit fit needs at least three rows with s >= 0.9");

  size_t m = table.rows.size();
  std::vector<double> x(3), yg(3), yr(3);
  for (size_t i = 0; i < 3; ++i) {
    const SweepRow& row = table.rows[m - 3 + i];
    x[i] = 1.0 - row.s;
    yg[i] = row.gamma_s;
    yr[i] = row.ratio;
  }
  LineFit fg = fit_line(x, yg), fr = fit_line(x, yr);

  LimitEstimate est;
  est.gamma_bar_est = fg.intercept;
  est.mu_est = fr.intercept;
  est.fit_residual_gamma = fg.residual;
  est.fit_residual_ratio = fr.residual;
  est.classification =
      cap.gamma >= 2.0 - 1e-9 ? ConeClass::narrow : ConeClass::wide;
  est.predicted_gamma_bar = std::min(cap.gamma, 2.0);
  if (cap.gamma > 2.0 + 1e-9) {
    if (!mu)
      throw std::domain_error(
          "cones with exponent above 2 need a mu0 result for the prediction");
    est.predicted_mu = mu->mu0;
  } else {
    est.predicted_mu = 0.0;
  }
  return est;
}

}  // namespace conex
