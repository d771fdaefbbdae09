#include "ifd/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ifd/errors.hpp"

namespace ifd {

namespace {

constexpr double kHermitianTolerance = 1e-9;

void require_hermitian(const SpectralField& s, const char* what) {
  if (s.hermitian_defect() > kHermitianTolerance * s.max_abs())
    throw NonHermitianInput(std::string(what) + ": band lost Hermitian symmetry");
}

void require(Representation got, Representation want, const char* what) {
  if (got != want) throw std::invalid_argument(std::string(what) + ": wrong data representation");
}

}  // namespace

DataVector DataVector::box(double length, std::vector<double> values) {
  DataVector d;
  d.rep_ = Representation::box;
  d.length_ = length;
  d.reals_ = std::move(values);
  return d;
}

DataVector DataVector::samples(double length, std::vector<double> values) {
  DataVector d;
  d.rep_ = Representation::samples;
  d.length_ = length;
  d.reals_ = std::move(values);
  return d;
}

DataVector DataVector::fourier(SpectralField modes) {
  DataVector d;
  d.rep_ = Representation::fourier;
  d.length_ = modes.length();
  d.spectrum_ = std::move(modes);
  return d;
}

std::size_t DataVector::size() const noexcept {
  return rep_ == Representation::fourier ? spectrum_->width() : reals_.size();
}

std::span<const double> DataVector::values() const {
  if (rep_ == Representation::fourier) throw std::logic_error("Fourier data has no real values");
  return reals_;
}

std::span<double> DataVector::values() {
  if (rep_ == Representation::fourier) throw std::logic_error("Fourier data has no real values");
  return reals_;
}

const SpectralField& DataVector::spectrum() const {
  if (rep_ != Representation::fourier) throw std::logic_error("data is not a Fourier band");
  return *spectrum_;
}

SpectralField& DataVector::spectrum() {
  if (rep_ != Representation::fourier) throw std::logic_error("data is not a Fourier band");
  return *spectrum_;
}

double DataVector::max_norm() const noexcept {
  if (rep_ == Representation::fourier) return spectrum_->max_abs();
  double m = 0.0;
  for (double v : reals_) m = std::max(m, std::abs(v));
  return m;
}

bool DataVector::all_finite() const noexcept {
  if (rep_ == Representation::fourier)
    return std::all_of(spectrum_->modes().begin(), spectrum_->modes().end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
  return std::all_of(reals_.begin(), reals_.end(), [](double v) { return std::isfinite(v); });
}

double DataVector::total() const {
  switch (rep_) {
    case Representation::box: {
      double s = 0.0;
      for (double v : reals_) s += v;
      return s;
    }
    case Representation::samples: {
      double s = 0.0;
      for (double v : reals_) s += v;
      return s * length_ / static_cast<double>(reals_.size());
    }
    case Representation::fourier:
      return length_ * (*spectrum_)[0].real();
  }
  return 0.0;
}

DataVector& DataVector::operator+=(const DataVector& other) {
  if (rep_ != other.rep_ || size() != other.size())
    throw std::invalid_argument("DataVector shape mismatch");
  if (rep_ == Representation::fourier) {
    auto dst = spectrum_->modes();
    auto src = other.spectrum_->modes();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  } else {
    for (std::size_t i = 0; i < reals_.size(); ++i) reals_[i] += other.reals_[i];
  }
  return *this;
}

DataVector& DataVector::operator*=(double a) {
  if (rep_ == Representation::fourier) {
    for (auto& c : spectrum_->modes()) c *= a;
  } else {
    for (auto& v : reals_) v *= a;
  }
  return *this;
}

DataVector DataVector::zeros_like() const {
  DataVector z = *this;
  z *= 0.0;
  return z;
}

void BurgersParams::validate() const {
  if (!std::isfinite(eta) || eta < 0.0) throw std::invalid_argument("eta must be finite and >= 0");
  if (noise_diag)
    for (double v : *noise_diag)
      if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("noise_diag entries must be >= 0");
}

DataVector box_ifd_rhs(const DataVector& d, const PrecomputedOperators& ops,
                       const BurgersParams& params) {
  require(d.representation(), Representation::box, "box_ifd_rhs");
  const auto n = static_cast<std::size_t>(ops.domain().n_cells());
  if (d.size() != n) throw std::invalid_argument("box_ifd_rhs: data size does not match domain");

  const auto dp = ops.solve_gram(d.values());
  const auto lap = ops.apply_laplace(dp);
  const auto m = ops.edge_values(dp);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double right = m[(i + 1) % n];
    const double left = m[i];
    out[i] = params.eta * lap[i] - 0.5 * (right * right - left * left);
  }
  return DataVector::box(d.length(), std::move(out));
}

DataVector fourier_ifd_rhs(const DataVector& d, const BurgersParams& params) {
  require(d.representation(), Representation::fourier, "fourier_ifd_rhs");
  const auto& s = d.spectrum();
  require_hermitian(s, "fourier_ifd_rhs input");
  const int k = s.half_band();

  SpectralField derivative(s.length(), k, s.grid_size());
  for (int j = -k; j <= k; ++j) derivative[j] = Complex(0.0, s.wavenumber(j)) * s[j];

  auto out = circular_convolve(s, derivative, true);
  for (int j = -k; j <= k; ++j) {
    const double kj = s.wavenumber(j);
    out[j] += -params.eta * kj * kj * s[j];
  }
  require_hermitian(out, "fourier_ifd_rhs output");
  return DataVector::fourier(std::move(out));
}

DataVector fourier_ifd_rhs_generic(const DataVector& d, std::span<const double> power_spectrum,
                                   const BurgersParams& params) {
  require(d.representation(), Representation::fourier, "fourier_ifd_rhs_generic");
  const auto& data = d.spectrum();
  require_hermitian(data, "fourier_ifd_rhs_generic input");
  const int k = data.half_band();
  if (power_spectrum.size() % 2 != 1)
    throw std::invalid_argument("power spectrum must cover a symmetric band");
  const int f = static_cast<int>(power_spectrum.size() / 2);
  if (f < k) throw std::invalid_argument("power spectrum band narrower than the data band");
  auto prior = [&](int j) { return power_spectrum[static_cast<std::size_t>(j + f)]; };
  for (double p : power_spectrum)
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("power spectrum must be > 0");

  // d' = (R S R^+)^{-1} d, m = S R^+ d' on the field band.
  SpectralField m(data.length(), f, data.grid_size());
  for (int j = -k; j <= k; ++j) m[j] = prior(j) * (data[j] / prior(j));

  SpectralField dm(data.length(), f, data.grid_size());
  for (int j = -f; j <= f; ++j) dm[j] = Complex(0.0, m.wavenumber(j)) * m[j];
  auto field_rhs = circular_convolve(m, dm, true);
  for (int j = -f; j <= f; ++j) {
    const double kj = m.wavenumber(j);
    field_rhs[j] += -params.eta * kj * kj * m[j];
  }

  // <ds_{i-j} ds_j> under the posterior only couples at i = 0 for a diagonal
  // prior: sum_j (i k_j) D_jj, D = S - S R^+ (R S R^+)^{-1} R S.
  Complex trace(0.0, 0.0);
  for (int j = 1; j <= f; ++j) {
    auto posterior = [&](int jj) {
      const double p = prior(jj);
      return std::abs(jj) <= k ? p - p * (1.0 / p) * p : p;
    };
    trace += Complex(0.0, m.wavenumber(j)) * (posterior(j) - posterior(-j));
  }
  field_rhs[0] += trace;

  SpectralField out(data.length(), k, data.grid_size());
  for (int j = -k; j <= k; ++j) out[j] = field_rhs[j];
  require_hermitian(out, "fourier_ifd_rhs_generic output");
  return DataVector::fourier(std::move(out));
}

std::vector<double> fd_diffusion_term(std::span<const double> u, double dx, double eta) {
  const std::size_t n = u.size();
  std::vector<double> out(n);
  const double c = eta / (dx * dx);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = c * (u[(i + 1) % n] - 2.0 * u[i] + u[(i + n - 1) % n]);
  return out;
}

std::vector<double> fd_advection_term(std::span<const double> u, double dx) {
  const std::size_t n = u.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = -u[i] * (u[(i + 1) % n] - u[(i + n - 1) % n]) / (2.0 * dx);
  return out;
}

DataVector fd_rhs(const DataVector& u, double dx, const BurgersParams& params) {
  require(u.representation(), Representation::samples, "fd_rhs");
  if (!(dx > 0.0)) throw std::invalid_argument("fd_rhs: dx must be > 0");
  auto out = fd_diffusion_term(u.values(), dx, params.eta);
  const auto adv = fd_advection_term(u.values(), dx);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += adv[i];
  return DataVector::samples(u.length(), std::move(out));
}

DataVector noise_lift(const DataVector& rhs, const PrecomputedOperators& ops,
                      const BurgersParams& params) {
  require(rhs.representation(), Representation::box, "noise_lift");
  if (!params.noise_diag) throw std::invalid_argument("noise_lift: no noise covariance given");
  const auto& noise = *params.noise_diag;
  if (noise.size() != rhs.size()) throw std::invalid_argument("noise_lift: noise size mismatch");
  const auto solved = ops.solve_gram(rhs.values());
  std::vector<double> out(rhs.values().begin(), rhs.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += noise[i] * solved[i];
  return DataVector::box(rhs.length(), std::move(out));
}

}  // namespace ifd
