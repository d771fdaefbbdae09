#include "ifd/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ifd/errors.hpp"

namespace ifd {

namespace {

std::size_t wrap(long j, long n) { return static_cast<std::size_t>(((j % n) + n) % n); }

}  // namespace

std::vector<double> wiener_reconstruct_at(const DataVector& d, const PrecomputedOperators& ops,
                                          std::span<const double> positions) {
  if (d.representation() != Representation::box)
    throw std::invalid_argument("wiener_reconstruct: box data required");
  const auto& domain = ops.domain();
  const long n = domain.n_cells();
  if (static_cast<long>(d.size()) != n) throw std::invalid_argument("wiener_reconstruct: size mismatch");
  const double l = domain.cell_width();
  const auto dp = ops.solve_gram(d.values());

  // Boxes further than the operator band from x carry weights below the
  // truncation tolerance.
  const long lo_off = ops.truncated() ? -(ops.band_half_width() + 2) : -(n / 2);
  const long hi_off = ops.truncated() ? ops.band_half_width() + 2 : n - n / 2 - 1;

  std::vector<double> out(positions.size());
  for (std::size_t p = 0; p < positions.size(); ++p) {
    const double x = positions[p];
    const long home = static_cast<long>(std::floor(x / l));
    double v = 0.0;
    for (long j = home + lo_off; j <= home + hi_off; ++j) {
      const double left = static_cast<double>(j) * l;
      v += ops.kernel().segment_integral(x - (left + l), x - left) * dp[wrap(j, n)];
    }
    out[p] = v;
  }
  return out;
}

FineField wiener_reconstruct(const DataVector& d, const PrecomputedOperators& ops,
                             std::size_t n_samples) {
  const double length = ops.domain().length();
  std::vector<double> x(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i)
    x[i] = length * static_cast<double>(i) / static_cast<double>(n_samples);
  return FineField(length, wiener_reconstruct_at(d, ops, x));
}

FineField fourier_reconstruct(const DataVector& d, std::size_t n_samples) {
  return idft(d.spectrum(), n_samples);
}

DataVector project_to_data(const FineField& s, const PeriodicDomain& domain) {
  if (std::abs(s.length() - domain.length()) > 1e-12 * domain.length())
    throw GridMismatch("project_to_data: field and domain lengths differ");
  const std::size_t n = static_cast<std::size_t>(domain.n_cells());
  if (s.size() % n != 0) throw GridMismatch("project_to_data: fine grid does not align with boxes");
  const std::size_t f = s.size() / n;
  if (f < 4) throw std::invalid_argument("project_to_data: need at least 4 samples per box");
  const double h = s.spacing();
  const bool simpson = f % 2 == 0;

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t base = i * f;
    auto at = [&](std::size_t k) { return s[(base + k) % s.size()]; };
    double acc = at(0) + at(f);
    if (simpson) {
      for (std::size_t k = 1; k < f; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * at(k);
      d[i] = acc * h / 3.0;
    } else {
      acc *= 0.5;
      for (std::size_t k = 1; k < f; ++k) acc += at(k);
      d[i] = acc * h;
    }
  }
  return DataVector::box(domain.length(), std::move(d));
}

DataVector project_to_fourier(const FineField& s, int n_cells) {
  const int half_band = (n_cells - 1) / 2;
  const auto full = dft(s);
  if (half_band > full.half_band())
    throw GridMismatch("project_to_fourier: band wider than the sampled field resolves");
  SpectralField band(s.length(), half_band, static_cast<std::size_t>(n_cells));
  for (int j = -half_band; j <= half_band; ++j) band[j] = full[j];
  return DataVector::fourier(std::move(band));
}

DataVector sample_to_grid(const FineField& s, std::size_t n_points) {
  if (n_points == 0 || s.size() % n_points != 0)
    throw GridMismatch("sample_to_grid: grids are not commensurate");
  const std::size_t stride = s.size() / n_points;
  std::vector<double> u(n_points);
  for (std::size_t i = 0; i < n_points; ++i) u[i] = s[i * stride];
  return DataVector::samples(s.length(), std::move(u));
}

ErrorReport compare(const FineField& m, const FineField& reference) {
  if (std::abs(m.length() - reference.length()) > 1e-12 * reference.length())
    throw GridMismatch("compare: fields live on different intervals");
  if (reference.size() < m.size() || reference.size() % m.size() != 0)
    throw GridMismatch("compare: reference grid is not a refinement of the field grid");
  const std::size_t stride = reference.size() / m.size();

  ErrorReport r;
  double sq = 0.0;
  double mass_m = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double diff = m[i] - reference[i * stride];
    sq += diff * diff;
    r.linf = std::max(r.linf, std::abs(diff));
    mass_m += m[i];
  }
  double mass_r = 0.0;
  double abs_r = 0.0;
  for (double v : reference.samples()) {
    mass_r += v;
    abs_r += std::abs(v);
  }
  mass_m *= m.spacing();
  mass_r *= reference.spacing();
  abs_r *= reference.spacing();
  r.l2 = std::sqrt(sq * m.spacing());
  const double scale = std::max(std::abs(mass_r), abs_r);
  r.mass_drift = scale > 0.0 ? std::abs(mass_m - mass_r) / scale : std::abs(mass_m);
  return r;
}

}  // namespace ifd
