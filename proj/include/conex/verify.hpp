#pragma once

#include <string>
#include <vector>

namespace conex {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Self-contained verification checks.  Each one recomputes everything it
/// needs, compares against closed forms or cross-module oracles with fixed
/// tolerances, and enforces its wall-clock budget; failures carry the
/// offending numbers in detail.
CheckResult criterion_classical_anchors();
CheckResult criterion_half_space_fractional();
CheckResult criterion_mu_zero_closed_form();
CheckResult criterion_wide_limit();
CheckResult criterion_narrow_limit();
CheckResult criterion_monotonicity();
CheckResult criterion_acf();
CheckResult criterion_oracle();
CheckResult criterion_constant_asymptotics();

std::vector<std::string> suite_names();

/// Named suite ("anchors", "monotonicity", "limits", "acf", "oracle") or
/// "all" for every check in order.
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace conex
