#include "conex/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conex::detail {

namespace {

double slope_at(const std::vector<double>& x, const std::vector<double>& v,
                size_t i) {
  size_t n = x.size();
  if (i == 0) return 0.0;  // even symmetry across phi = 0
  if (i + 1 >= n) {
    double h = x[i] - x[i - 1];
    return (v[i] - v[i - 1]) / h;
  }
  double hl = x[i] - x[i - 1], hr = x[i + 1] - x[i];
  double dl = (v[i] - v[i - 1]) / hl, dr = (v[i + 1] - v[i]) / hr;
  return (hr * dl + hl * dr) / (hl + hr);
}

}  // namespace

double eval_profile(const std::vector<double>& nodes,
                    const std::vector<double>& values, double theta,
                    double edge_exponent, double x) {
  if (nodes.size() < 2 || nodes.size() != values.size())
    throw std::domain_error("profile needs matching node/value arrays");
  if (x >= theta) return 0.0;
  if (x <= nodes.front()) return values.front();
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  size_t k = static_cast<size_t>(it - nodes.begin()) - 1;
  double x0 = nodes[k], x1 = nodes[k + 1];
  if (x1 >= theta - 1e-14) {
    // boundary cell: value decays like (theta - x)^edge_exponent
    double d = theta - x0;
    return values[k] * std::pow((theta - x) / d, edge_exponent);
  }
  double h = x1 - x0, t = (x - x0) / h;
  double m0 = slope_at(nodes, values, k), m1 = slope_at(nodes, values, k + 1);
  double t2 = t * t, t3 = t2 * t;
  return values[k] * (2 * t3 - 3 * t2 + 1) + h * m0 * (t3 - 2 * t2 + t) +
         values[k + 1] * (-2 * t3 + 3 * t2) + h * m1 * (t3 - t2);
}

}  // namespace conex::detail
