#pragma once

// Periodic 1-D domain bookkeeping and the one discrete Fourier transform used
// throughout the library.
//
// Fourier convention (fixed here, used everywhere):
//
//   forward   c_j = (1/M) sum_n s_n exp(+i k_j x_n),   k_j = 2 pi j / L
//   inverse   s_n =        sum_j c_j exp(-i k_j x_n)
//
// so c_0 is the mean of the samples, d/dx acts on coefficients as -i k_j and
// Parseval reads  h sum_n |s_n|^2 = L sum_j |c_j|^2  with h = L / M.
//
// A SpectralField always stores a symmetric band j = -K..K. For an even
// transform size M the Nyquist coefficient is split equally between +-M/2,
// which keeps the band Hermitian and makes idft(dft(f)) exact.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ifd {

using Complex = std::complex<double>;

class PeriodicDomain {
 public:
  PeriodicDomain(double length, int n_cells, int fine_factor = 1);

  double length() const noexcept { return length_; }
  int n_cells() const noexcept { return n_cells_; }
  int fine_factor() const noexcept { return fine_factor_; }

  /// Box width l = L / N.
  double cell_width() const noexcept { return length_ / n_cells_; }
  int fine_size() const noexcept { return n_cells_ * fine_factor_; }
  double fine_spacing() const noexcept { return length_ / fine_size(); }

  /// Left edge x_i = i l of box i; box i is (x_i, x_{i+1}].
  double edge(int i) const noexcept { return i * cell_width(); }

  /// Same interval and fine factor, different number of boxes.
  PeriodicDomain with_cells(int n_cells) const { return {length_, n_cells, fine_factor_}; }
  PeriodicDomain with_fine_factor(int fine_factor) const { return {length_, n_cells_, fine_factor}; }

  bool operator==(const PeriodicDomain&) const = default;

 private:
  double length_;
  int n_cells_;
  int fine_factor_;
};

/// Real samples s(x_n) at x_n = n h, h = length / size, on a periodic grid.
class FineField {
 public:
  FineField(double length, std::vector<double> samples);

  /// Samples `f` on the fine grid of `domain`.
  static FineField sample(const PeriodicDomain& domain, const std::function<double(double)>& f);
  /// Samples `f` at `n_samples` equispaced points of [0, length).
  static FineField sample(double length, std::size_t n_samples, const std::function<double(double)>& f);

  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double spacing() const noexcept { return length_ / static_cast<double>(samples_.size()); }
  double position(std::size_t n) const noexcept { return static_cast<double>(n) * spacing(); }

  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t n) const noexcept { return samples_[n]; }

 private:
  double length_;
  std::vector<double> samples_;
};

/// Fourier coefficients on a symmetric band j = -K..K.
class SpectralField {
 public:
  /// Zero band of half-width `half_band`. `grid_size` is the sample count
  /// idft() uses by default; 0 selects 2K + 1.
  SpectralField(double length, int half_band, std::size_t grid_size = 0);
  /// `modes` holds j = -K..K in order and must have odd size.
  SpectralField(double length, std::vector<Complex> modes, std::size_t grid_size = 0);

  double length() const noexcept { return length_; }
  int half_band() const noexcept { return half_band_; }
  std::size_t width() const noexcept { return modes_.size(); }
  std::size_t grid_size() const noexcept { return grid_size_; }

  double wavenumber(int j) const noexcept;

  Complex& operator[](int j) { return modes_[static_cast<std::size_t>(j + half_band_)]; }
  const Complex& operator[](int j) const { return modes_[static_cast<std::size_t>(j + half_band_)]; }

  std::span<const Complex> modes() const noexcept { return modes_; }
  std::span<Complex> modes() noexcept { return modes_; }

  /// max_j |c_j - conj(c_{-j})|.
  double hermitian_defect() const noexcept;
  double max_abs() const noexcept;

 private:
  double length_;
  int half_band_;
  std::size_t grid_size_;
  std::vector<Complex> modes_;
};

/// Forward transform of the samples; band half-width floor(M/2), grid_size M.
SpectralField dft(const FineField& field);

/// Inverse transform onto `field.grid_size()` samples.
FineField idft(const SpectralField& modes);
/// Inverse transform onto `n_samples` samples (spectral interpolation).
/// Modes with 2|j| > n_samples are dropped, +-n/2 fold onto the Nyquist sample.
/// Throws NonHermitianInput if the imaginary residue exceeds 1e-9 of the output.
FineField idft(const SpectralField& modes, std::size_t n_samples);

/// c_i = sum_j a_{i-j} b_j over the band. Without dealiasing the index wraps
/// modulo the band width. With dealiasing the product is formed on a grid of
/// at least 3/2 the band width so the result equals the exact (non-wrapping)
/// convolution restricted to the band.
SpectralField circular_convolve(const SpectralField& a, const SpectralField& b, bool dealias);

/// L sum_j |c_j|^2, equal to h sum_n |s_n|^2 of the synthesised samples.
double spectral_energy(const SpectralField& modes);

/// Grid size used by dealiased products of two half-width-K bands.
std::size_t dealiased_grid_size(int half_band);

}  // namespace ifd
