#pragma once

// No-noise Wiener posterior covariance for box measurements,
//
//   D(x, y) = C(x - y) - sum_ij e_i(x) (A^{-1})_ij e_j(y),
//   e_i(x)  = int_{box i} C(x - y) dy,   A_ij = int_{box i} int_{box j} C,
//
// evaluated densely so that non-uniform partitions can be studied too.

#include <memory>
#include <vector>

#include "ifd/prior.hpp"

namespace ifd {

/// Dense Gram matrix of an arbitrary box partition, row-major.
std::vector<double> dense_gram(const CorrelationKernel& kernel, const BoxResponse& boxes);

class PosteriorCovariance {
 public:
  PosteriorCovariance(CorrelationKernel kernel, BoxResponse boxes);
  ~PosteriorCovariance();
  PosteriorCovariance(PosteriorCovariance&&) noexcept;
  PosteriorCovariance& operator=(PosteriorCovariance&&) noexcept;

  const BoxResponse& boxes() const noexcept { return boxes_; }

  /// e_i(x) for every box.
  std::vector<double> response_weights(double x) const;
  double covariance(double x, double y) const;
  double variance(double x) const { return covariance(x, x); }

  /// D(x, x + eps) - D(x, x - eps).
  double asymmetry(double x, double eps) const;

  /// int_{box i} eps^{-1} (D(x, x + eps) - D(x, x - eps)) dx, the trace term
  /// of the box scheme for a finite-difference gradient of step eps.
  double third_term(int box, double eps) const;

  /// Dense Cholesky solve A x = b (the oracle for the circulant solve).
  std::vector<double> solve(const std::vector<double>& b) const;

 private:
  struct Factor;
  CorrelationKernel kernel_;
  BoxResponse boxes_;
  std::unique_ptr<Factor> factor_;
};

/// Pointwise asymmetry on the uniform grid of `domain`.
double posterior_cov_asymmetry(const CorrelationKernel& kernel, const PeriodicDomain& domain,
                               double x, double eps);

}  // namespace ifd
