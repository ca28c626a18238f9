#pragma once

// Piecewise-cubic evaluation of axisymmetric angular profiles sampled on
// [0, theta]: Hermite cubics with quadratic-fit slopes, an even-symmetry
// slope at phi = 0, a (theta - phi)^edge_exponent blend on the cell touching
// theta, and identically zero beyond theta.

#include <vector>

namespace conex::detail {

double eval_profile(const std::vector<double>& nodes,
                    const std::vector<double>& values, double theta,
                    double edge_exponent, double x);

}  // namespace conex::detail
