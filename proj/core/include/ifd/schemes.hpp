#pragma once

// Right-hand sides dd/dt of the Burgers equation ds/dt = eta s'' - s s' for
//   - the box-grid IFD scheme (data = box integrals),
//   - the Fourier-grid IFD scheme (data = Fourier band), and
//   - a central finite-difference baseline (data = point samples).

#include <optional>
#include <span>
#include <vector>

#include "ifd/domain.hpp"
#include "ifd/prior.hpp"

namespace ifd {

enum class Representation { box, fourier, samples };

/// The evolved state. Box values are box integrals (field x length),
/// samples are point values on a uniform grid, Fourier values are a
/// Hermitian band of coefficients in the library's transform convention.
class DataVector {
 public:
  static DataVector box(double length, std::vector<double> values);
  static DataVector samples(double length, std::vector<double> values);
  static DataVector fourier(SpectralField modes);

  Representation representation() const noexcept { return rep_; }
  double length() const noexcept { return length_; }
  /// Stored entries (reals, or complex band width).
  std::size_t size() const noexcept;

  std::span<const double> values() const;
  std::span<double> values();
  const SpectralField& spectrum() const;
  SpectralField& spectrum();

  double max_norm() const noexcept;
  bool all_finite() const noexcept;
  /// Discrete integral of the field: sum of box integrals, h sum of samples,
  /// or L Re c_0.
  double total() const;

  DataVector& operator+=(const DataVector& other);
  DataVector& operator*=(double a);
  friend DataVector operator+(DataVector a, const DataVector& b) { return a += b; }
  friend DataVector operator*(double s, DataVector a) { return a *= s; }

  /// Same representation, shape and length, all zeros.
  DataVector zeros_like() const;

 private:
  Representation rep_ = Representation::box;
  double length_ = 1.0;
  std::vector<double> reals_;
  std::optional<SpectralField> spectrum_;
};

struct BurgersParams {
  double eta = 0.0;
  /// Diagonal measurement noise for the lifted update; absent means no noise.
  std::optional<std::vector<double>> noise_diag;

  void validate() const;
};

/// eta Lap d' - 1/2 [m(x)^2]_{x_i}^{x_{i+1}} with d' = A^{-1} d and
/// m(x_i) = sum_j E_j(x_i) d'_j. The posterior trace term is omitted
/// (see PosteriorCovariance::third_term).
DataVector box_ifd_rhs(const DataVector& d, const PrecomputedOperators& ops,
                       const BurgersParams& params);

/// -eta k_i^2 d_i + sum_j d_{i-j} (i k_j) d_j with dealiased convolution.
DataVector fourier_ifd_rhs(const DataVector& d, const BurgersParams& params);

/// Evaluates R f(O_m), m = S R^+ (R S R^+)^{-1} d, for a diagonal Fourier
/// prior S = diag(power_spectrum) on a field band j = -F..F (F >= K) without
/// cancelling S by hand, including the posterior trace correction.
DataVector fourier_ifd_rhs_generic(const DataVector& d, std::span<const double> power_spectrum,
                                   const BurgersParams& params);

/// eta (u_{i+1} - 2u_i + u_{i-1}) / dx^2.
std::vector<double> fd_diffusion_term(std::span<const double> u, double dx, double eta);
/// -u_i (u_{i+1} - u_{i-1}) / (2 dx).
std::vector<double> fd_advection_term(std::span<const double> u, double dx);
DataVector fd_rhs(const DataVector& u, double dx, const BurgersParams& params);

/// (N + A) A^{-1} rhs = rhs + N A^{-1} rhs for diagonal N.
DataVector noise_lift(const DataVector& rhs, const PrecomputedOperators& ops,
                      const BurgersParams& params);

}  // namespace ifd
