#pragma once

#include <stdexcept>
#include <string>

namespace conex {

/// An iterative solver failed to reach its tolerance within the iteration cap.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The requested quantity is undefined for the given cone, e.g. the aperture
/// is too wide for the first eigenvalue to clear the required threshold.
class AdmissibilityError : public std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace conex
