#include "ifd/domain.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "ifd/errors.hpp"

namespace ifd {

namespace {

// FFTW planning is not thread-safe; execution with fftw_execute_dft is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// out_j = sum_n in_n exp(sign * 2 pi i j n / M), unnormalised.
std::vector<Complex> transform(std::vector<Complex> in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<Complex> out(in.size());
  if (n == 0) return out;
  fftw_plan plan = plan_cache().get(n, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::size_t wrap(int j, std::size_t m) {
  const int mi = static_cast<int>(m);
  return static_cast<std::size_t>(((j % mi) + mi) % mi);
}

// Band -> grid layout used before an inverse transform.
std::vector<Complex> scatter_band(const SpectralField& modes, std::size_t m) {
  std::vector<Complex> grid(m);
  const int k = modes.half_band();
  for (int j = -k; j <= k; ++j) {
    const std::size_t twice = static_cast<std::size_t>(2 * std::abs(j));
    if (twice > m) continue;
    grid[wrap(j, m)] += modes[j];
  }
  return grid;
}

// Grid -> band layout after a forward transform (values already normalised).
SpectralField gather_band(double length, const std::vector<Complex>& grid, int half_band,
                          std::size_t grid_size) {
  const std::size_t m = grid.size();
  SpectralField out(length, half_band, grid_size);
  for (int j = -half_band; j <= half_band; ++j) {
    const std::size_t twice = static_cast<std::size_t>(2 * std::abs(j));
    if (twice > m) continue;
    Complex v = grid[wrap(j, m)];
    if (twice == m) v *= 0.5;
    out[j] = v;
  }
  return out;
}

std::vector<Complex> synthesize(const SpectralField& modes, std::size_t m) {
  return transform(scatter_band(modes, m), -1);
}

SpectralField analyze(double length, std::vector<Complex> samples, int half_band,
                      std::size_t grid_size) {
  const double inv = 1.0 / static_cast<double>(samples.size());
  auto grid = transform(std::move(samples), +1);
  for (auto& v : grid) v *= inv;
  return gather_band(length, grid, half_band, grid_size);
}

}  // namespace

PeriodicDomain::PeriodicDomain(double length, int n_cells, int fine_factor)
    : length_(length), n_cells_(n_cells), fine_factor_(fine_factor) {
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("domain length must be > 0");
  if (n_cells < 4) throw std::invalid_argument("domain needs at least 4 cells");
  if (fine_factor < 1) throw std::invalid_argument("fine_factor must be >= 1");
}

FineField::FineField(double length, std::vector<double> samples)
    : length_(length), samples_(std::move(samples)) {
  if (!(length > 0.0)) throw std::invalid_argument("field length must be > 0");
  if (samples_.empty()) throw std::invalid_argument("field needs at least one sample");
  for (double v : samples_)
    if (!std::isfinite(v)) throw std::invalid_argument("field samples must be finite");
}

FineField FineField::sample(const PeriodicDomain& domain, const std::function<double(double)>& f) {
  return sample(domain.length(), static_cast<std::size_t>(domain.fine_size()), f);
}

FineField FineField::sample(double length, std::size_t n_samples,
                            const std::function<double(double)>& f) {
  std::vector<double> s(n_samples);
  const double h = length / static_cast<double>(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) s[n] = f(static_cast<double>(n) * h);
  return FineField(length, std::move(s));
}

SpectralField::SpectralField(double length, int half_band, std::size_t grid_size)
    : length_(length),
      half_band_(half_band),
      grid_size_(grid_size == 0 ? static_cast<std::size_t>(2 * half_band + 1) : grid_size),
      modes_(static_cast<std::size_t>(2 * half_band + 1)) {
  if (half_band < 0) throw std::invalid_argument("negative band half-width");
  if (!(length > 0.0)) throw std::invalid_argument("spectral length must be > 0");
}

SpectralField::SpectralField(double length, std::vector<Complex> modes, std::size_t grid_size)
    : length_(length), half_band_(static_cast<int>(modes.size() / 2)), modes_(std::move(modes)) {
  if (modes_.size() % 2 != 1) throw std::invalid_argument("spectral band must have odd width");
  if (!(length > 0.0)) throw std::invalid_argument("spectral length must be > 0");
  grid_size_ = grid_size == 0 ? modes_.size() : grid_size;
}

double SpectralField::wavenumber(int j) const noexcept {
  return 2.0 * std::numbers::pi * j / length_;
}

double SpectralField::hermitian_defect() const noexcept {
  double worst = 0.0;
  for (int j = 0; j <= half_band_; ++j)
    worst = std::max(worst, std::abs((*this)[j] - std::conj((*this)[-j])));
  return worst;
}

double SpectralField::max_abs() const noexcept {
  double worst = 0.0;
  for (const auto& c : modes_) worst = std::max(worst, std::abs(c));
  return worst;
}

SpectralField dft(const FineField& field) {
  const std::size_t m = field.size();
  std::vector<Complex> in(field.samples().begin(), field.samples().end());
  return analyze(field.length(), std::move(in), static_cast<int>(m / 2), m);
}

FineField idft(const SpectralField& modes) { return idft(modes, modes.grid_size()); }

FineField idft(const SpectralField& modes, std::size_t n_samples) {
  if (n_samples == 0) throw std::invalid_argument("idft needs at least one sample");
  auto grid = synthesize(modes, n_samples);
  double re_max = 0.0;
  double im_max = 0.0;
  std::vector<double> out(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) {
    out[n] = grid[n].real();
    re_max = std::max(re_max, std::abs(grid[n]));
    im_max = std::max(im_max, std::abs(grid[n].imag()));
  }
  if (im_max > 1e-9 * re_max)
    throw NonHermitianInput("idft: imaginary residue " + detail::sci(im_max) +
                            " exceeds 1e-9 of the output");
  return FineField(modes.length(), std::move(out));
}

std::size_t dealiased_grid_size(int half_band) {
  // ceil(3 (2K + 1) / 2) = 3K + 2 > 3K keeps every |j| <= 2K product mode
  // from folding back into |j| <= K.
  return static_cast<std::size_t>(3 * half_band + 2);
}

SpectralField circular_convolve(const SpectralField& a, const SpectralField& b, bool dealias) {
  if (a.half_band() != b.half_band()) throw std::invalid_argument("circular_convolve: band mismatch");
  const int k = a.half_band();
  const std::size_t m = dealias ? dealiased_grid_size(k) : a.width();
  auto sa = synthesize(a, m);
  auto sb = synthesize(b, m);
  for (std::size_t n = 0; n < m; ++n) sa[n] *= sb[n];
  return analyze(a.length(), std::move(sa), k, a.grid_size());
}

double spectral_energy(const SpectralField& modes) {
  // A split Nyquist pair holds half the grid coefficient in each slot, so
  // its energy counts twice.
  double e = 0.0;
  for (int j = -modes.half_band(); j <= modes.half_band(); ++j) {
    const double w = 2 * static_cast<std::size_t>(std::abs(j)) == modes.grid_size() ? 2.0 : 1.0;
    e += w * std::norm(modes[j]);
  }
  return modes.length() * e;
}

}  // namespace ifd
