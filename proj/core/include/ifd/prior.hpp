#pragma once

// Stationary Gaussian-process prior on the periodic interval and the box
// response operators derived from it.
//
// The prior covariance is a convolution with a periodised Gaussian mixture
//
//   C(x) = sum_q a_q sum_{|w| <= W} exp(-(x + w L)^2 / (2 sigma_q^2)).
//
// Box i is the half-open cell (x_i, x_{i+1}]. With d' = A^{-1} d the
// operators below are
//
//   A(m)    = int_{box 0} int_{box m} C(x - y) dy dx        (Gram, circulant)
//   Lap(m)  = C(l(m+1)) - 2 C(l m) + C(l(m-1))              (diffusion stencil)
//   E(m)    = int_{box i+m} C(x_i - y) dy                   (edge weights)
//
// and m(x_i) = sum_m E(m) d'_{i+m} is the reconstruction at the left edge of
// box i.

#include <span>
#include <vector>

#include "ifd/domain.hpp"

namespace ifd {

struct GaussianComponent {
  double amplitude;
  double width;
};

class CorrelationKernel {
 public:
  /// `images` = 0 selects the smallest image count that passes validation.
  CorrelationKernel(double length, std::vector<GaussianComponent> components, int images = 0);

  static CorrelationKernel gaussian(double length, double sigma, double amplitude = 1.0,
                                    int images = 0);

  /// Smallest W for which every omitted image is below 1e-14 of the peak
  /// anywhere within one period of the origin.
  static int required_images(double length, std::span<const GaussianComponent> components);

  double length() const noexcept { return length_; }
  const std::vector<GaussianComponent>& components() const noexcept { return components_; }
  int images() const noexcept { return images_; }
  double peak_amplitude() const noexcept;
  double min_width() const noexcept;

  CorrelationKernel with_images(int images) const { return {length_, components_, images}; }

  /// C(x), periodised. Exactly even in x.
  double value(double x) const;

  /// int over one period = sum_q a_q sigma_q sqrt(2 pi).
  double total_integral() const noexcept;

  /// int_a^b C(u) du.
  double segment_integral(double a, double b) const;

  /// int_{a1}^{b1} dx int_{a2}^{b2} dy C(x - y).
  double box_pair_integral(double a1, double b1, double a2, double b2) const;

  /// Continuous Fourier transform of the unperiodised mixture at angular
  /// frequency omega.
  double spectral_density(double omega) const noexcept;

 private:
  double length_;
  std::vector<GaussianComponent> components_;
  int images_;
};

double kernel_value(const CorrelationKernel& kernel, double x);

/// Eigenvalues of the circulant built from C sampled at n points of the
/// period (DFT of the sampled kernel).
std::vector<double> kernel_circulant_eigenvalues(const CorrelationKernel& kernel, int n_samples);

/// Indicator response of a partition of the circle into boxes
/// (edges_[i], edges_[i+1]]; the last box wraps to edges_[0] + L.
class BoxResponse {
 public:
  explicit BoxResponse(const PeriodicDomain& domain);
  BoxResponse(double length, std::vector<double> edges);

  double length() const noexcept { return length_; }
  int size() const noexcept { return static_cast<int>(edges_.size()); }
  double left(int i) const;
  double right(int i) const;
  double width(int i) const { return right(i) - left(i); }

  /// Index of the unique box containing x (right-closed cells).
  int box_of(double x) const;

  /// Moves edge `edge` by `delta`; box edge-1 grows and box edge shrinks.
  BoxResponse with_moved_edge(int edge, double delta) const;

 private:
  double length_;
  std::vector<double> edges_;
};

double box_box_overlap(const CorrelationKernel& kernel, const PeriodicDomain& domain, int offset);
double laplace_stencil_entry(const CorrelationKernel& kernel, const PeriodicDomain& domain, int m);
/// int_{box j} C(x_i - y) dy.
double edge_weight(const CorrelationKernel& kernel, const PeriodicDomain& domain, int edge_index,
                   int box_index);

/// Exact eigenvalues of the periodised Gram circulant, obtained from the
/// Fourier symbol of the box-box overlap: for mode k,
///   lambda_k = (1/l) sum_p C^(w_p) (2 sin(w_p l / 2) / w_p)^2,  w_p = 2 pi k / L + 2 pi p / l.
/// Every term is non-negative, so no cancellation occurs even when lambda_k
/// is far below the roundoff of the matrix entries.
std::vector<double> gram_symbol(const CorrelationKernel& kernel, const PeriodicDomain& domain);

enum class IntegralMethod { analytic, quadrature };

/// Circulant row stored for all N offsets, applied over a truncated band.
class CirculantRow {
 public:
  CirculantRow() = default;
  explicit CirculantRow(std::vector<double> full_row) : row_(std::move(full_row)) {}

  /// Entry at signed offset m (taken modulo N).
  double at(int offset) const;
  int size() const noexcept { return static_cast<int>(row_.size()); }
  std::span<const double> full() const noexcept { return row_; }

  /// out_i = sum_{m = lo}^{hi} at(m) v_{i+m}.
  std::vector<double> apply(std::span<const double> v, int lo, int hi) const;
  /// Same over every offset (no truncation).
  std::vector<double> apply_full(std::span<const double> v) const;

 private:
  std::vector<double> row_;
};

class PrecomputedOperators {
 public:
  PrecomputedOperators(PeriodicDomain domain, CorrelationKernel kernel, CirculantRow gram,
                       CirculantRow laplace, CirculantRow edge, std::vector<double> gram_eigenvalues,
                       int band_half_width, bool truncated);

  const PeriodicDomain& domain() const noexcept { return domain_; }
  const CorrelationKernel& kernel() const noexcept { return kernel_; }
  const CirculantRow& gram() const noexcept { return gram_; }
  const CirculantRow& laplace_stencil() const noexcept { return laplace_; }
  const CirculantRow& edge_weights() const noexcept { return edge_; }
  const std::vector<double>& gram_eigenvalues() const noexcept { return gram_eigenvalues_; }

  /// Truncation radius in boxes. Equal to N/2 when nothing was dropped.
  int band_half_width() const noexcept { return band_; }
  bool truncated() const noexcept { return truncated_; }

  std::vector<double> apply_gram(std::span<const double> v) const;
  std::vector<double> apply_laplace(std::span<const double> v) const;
  /// m(x_i) = sum_m E(m) v_{i+m} for every box edge x_i.
  std::vector<double> edge_values(std::span<const double> v) const;

  /// d' = A^{-1} d by circulant diagonalisation; throws SingularGram unless
  /// ||A d' - d|| <= 1e-10 ||d|| against the untruncated Gram.
  std::vector<double> solve_gram(std::span<const double> d) const;

 private:
  PeriodicDomain domain_;
  CorrelationKernel kernel_;
  CirculantRow gram_;
  CirculantRow laplace_;
  CirculantRow edge_;
  std::vector<double> gram_eigenvalues_;
  int band_;
  bool truncated_;
};

/// Builds every box operator for `kernel` on `domain`. The band is the
/// smallest radius whose dropped entries are all below trunc_tol times the
/// largest entry of their row. Throws NotPositiveDefinite if the kernel or
/// the Gram circulant is not positive definite.
PrecomputedOperators assemble_operators(const CorrelationKernel& kernel,
                                        const PeriodicDomain& domain, double trunc_tol = 1e-12,
                                        IntegralMethod method = IntegralMethod::analytic);

std::vector<double> solve_gram(const PrecomputedOperators& ops, std::span<const double> d);

}  // namespace ifd
