#pragma once

// Operator self-tests run by `ifd check`: Gram solve residual, analytic
// integrals against adaptive quadrature, the circulant solve against a dense
// Cholesky solve, and the posterior-covariance trace term.

#include <string>
#include <vector>

namespace ifd {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

std::vector<CheckResult> run_self_checks();

}  // namespace ifd
