#include "ifd/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ifd/errors.hpp"
#include "ifd/quadrature.hpp"

namespace ifd {

namespace {

constexpr double kImageTolerance = 1e-14;

// int_alpha^beta exp(-u^2 / (2 sigma^2)) du without cancellation in the tails.
double gauss_segment(double alpha, double beta, double sigma) {
  const double t = sigma * std::numbers::sqrt2;
  const double s = sigma * std::sqrt(std::numbers::pi / 2.0);
  if (alpha >= 0.0) return s * (std::erfc(alpha / t) - std::erfc(beta / t));
  if (beta <= 0.0) return s * (std::erfc(-beta / t) - std::erfc(-alpha / t));
  return s * (std::erf(beta / t) - std::erf(alpha / t));
}

// Decaying part of the double antiderivative F2(u) = s |u| + H(u) of the
// unit Gaussian, F2'' = exp(-u^2 / (2 sigma^2)).
double gauss_h(double u, double sigma) {
  const double au = std::abs(u);
  const double s = sigma * std::sqrt(std::numbers::pi / 2.0);
  return -s * au * std::erfc(au / (sigma * std::numbers::sqrt2)) +
         sigma * sigma * std::exp(-u * u / (2.0 * sigma * sigma));
}

double overlap_length(double a1, double b1, double a2, double b2) {
  return std::max(0.0, std::min(b1, b2) - std::max(a1, a2));
}

// Double integral of the unit Gaussian g(y - x), x in [a1,b1], y in [a2,b2].
double gauss_pair(double a1, double b1, double a2, double b2, double sigma) {
  const double s = sigma * std::sqrt(std::numbers::pi / 2.0);
  // The |u| parts of F2 combine to 2 s |I1 n I2| exactly.
  return 2.0 * s * overlap_length(a1, b1, a2, b2) + gauss_h(b2 - a1, sigma) -
         gauss_h(a2 - a1, sigma) - gauss_h(b2 - b1, sigma) + gauss_h(a2 - b1, sigma);
}

std::size_t wrap(int m, int n) { return static_cast<std::size_t>(((m % n) + n) % n); }

}  // namespace

CorrelationKernel::CorrelationKernel(double length, std::vector<GaussianComponent> components,
                                     int images)
    : length_(length), components_(std::move(components)), images_(images) {
  if (!(length > 0.0)) throw std::invalid_argument("kernel length must be > 0");
  if (components_.empty()) throw std::invalid_argument("kernel needs at least one component");
  for (const auto& c : components_) {
    if (!(c.amplitude > 0.0) || !std::isfinite(c.amplitude))
      throw std::invalid_argument("kernel amplitudes must be finite and > 0");
    if (!(c.width > 0.0) || !std::isfinite(c.width))
      throw std::invalid_argument("kernel widths must be finite and > 0");
  }
  const int needed = required_images(length_, components_);
  if (images_ == 0) {
    images_ = needed;
  } else if (images_ < needed) {
    throw std::invalid_argument("periodisation with " + std::to_string(images_) +
                                " images leaves tails above 1e-14 of the peak; need " +
                                std::to_string(needed));
  }
}

CorrelationKernel CorrelationKernel::gaussian(double length, double sigma, double amplitude,
                                              int images) {
  return CorrelationKernel(length, {{amplitude, sigma}}, images);
}

int CorrelationKernel::required_images(double length,
                                       std::span<const GaussianComponent> components) {
  double peak = 0.0;
  for (const auto& c : components) peak += c.amplitude;
  int images = 1;
  for (const auto& c : components) {
    // Points up to one period from the origin keep the first omitted image
    // at distance >= W L.
    const double reach = c.width * std::sqrt(2.0 * std::log(c.amplitude / (kImageTolerance * peak)));
    images = std::max(images, static_cast<int>(std::floor(reach / length)) + 1);
  }
  return images;
}

double CorrelationKernel::peak_amplitude() const noexcept {
  double peak = 0.0;
  for (const auto& c : components_) peak += c.amplitude;
  return peak;
}

double CorrelationKernel::min_width() const noexcept {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) w = std::min(w, c.width);
  return w;
}

double CorrelationKernel::value(double x) const {
  const double r = std::abs(x - length_ * std::round(x / length_));
  double v = 0.0;
  for (const auto& c : components_) {
    const double inv = 1.0 / (2.0 * c.width * c.width);
    for (int w = -images_; w <= images_; ++w) {
      const double u = r + w * length_;
      v += c.amplitude * std::exp(-u * u * inv);
    }
  }
  return v;
}

double CorrelationKernel::total_integral() const noexcept {
  double v = 0.0;
  for (const auto& c : components_) v += c.amplitude * c.width * std::sqrt(2.0 * std::numbers::pi);
  return v;
}

double CorrelationKernel::segment_integral(double a, double b) const {
  if (b < a) return -segment_integral(b, a);
  const double shift = length_ * std::round(0.5 * (a + b) / length_);
  a -= shift;
  b -= shift;
  double v = 0.0;
  for (const auto& c : components_)
    for (int w = -images_; w <= images_; ++w)
      v += c.amplitude * gauss_segment(a + w * length_, b + w * length_, c.width);
  return v;
}

double CorrelationKernel::box_pair_integral(double a1, double b1, double a2, double b2) const {
  const double shift = length_ * std::round(0.5 * ((a2 + b2) - (a1 + b1)) / length_);
  a2 -= shift;
  b2 -= shift;
  double v = 0.0;
  for (const auto& c : components_)
    for (int w = -images_; w <= images_; ++w)
      v += c.amplitude * gauss_pair(a1, b1, a2 + w * length_, b2 + w * length_, c.width);
  return v;
}

double CorrelationKernel::spectral_density(double omega) const noexcept {
  double v = 0.0;
  for (const auto& c : components_)
    v += c.amplitude * c.width * std::sqrt(2.0 * std::numbers::pi) *
         std::exp(-0.5 * omega * omega * c.width * c.width);
  return v;
}

double kernel_value(const CorrelationKernel& kernel, double x) { return kernel.value(x); }

std::vector<double> kernel_circulant_eigenvalues(const CorrelationKernel& kernel, int n_samples) {
  auto sampled = FineField::sample(kernel.length(), static_cast<std::size_t>(n_samples),
                                   [&](double x) { return kernel.value(x); });
  const auto modes = dft(sampled);
  std::vector<double> eig(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    const int ks = k <= n_samples / 2 ? k : k - n_samples;
    // Undo the Nyquist split.
    const double scale = 2 * std::abs(ks) == n_samples ? 2.0 : 1.0;
    eig[static_cast<std::size_t>(k)] = scale * modes[ks].real() * n_samples;
  }
  return eig;
}

BoxResponse::BoxResponse(const PeriodicDomain& domain) : length_(domain.length()) {
  edges_.resize(static_cast<std::size_t>(domain.n_cells()));
  for (int i = 0; i < domain.n_cells(); ++i) edges_[static_cast<std::size_t>(i)] = domain.edge(i);
}

BoxResponse::BoxResponse(double length, std::vector<double> edges)
    : length_(length), edges_(std::move(edges)) {
  if (edges_.size() < 2) throw std::invalid_argument("box response needs at least two boxes");
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (!(edges_[i] > edges_[i - 1])) throw std::invalid_argument("box edges must increase");
  if (!(edges_.back() < edges_.front() + length_))
    throw std::invalid_argument("box edges must fit in one period");
}

double BoxResponse::left(int i) const { return edges_.at(static_cast<std::size_t>(i)); }

double BoxResponse::right(int i) const {
  return i + 1 == size() ? edges_.front() + length_ : edges_.at(static_cast<std::size_t>(i + 1));
}

int BoxResponse::box_of(double x) const {
  // Map into (e0, e0 + L].
  double y = x - length_ * std::floor((x - edges_.front()) / length_);
  if (y <= edges_.front()) y += length_;
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), y);
  return static_cast<int>(it - edges_.begin()) - 1;
}

BoxResponse BoxResponse::with_moved_edge(int edge, double delta) const {
  auto edges = edges_;
  edges.at(static_cast<std::size_t>(edge)) += delta;
  return BoxResponse(length_, std::move(edges));
}

double box_box_overlap(const CorrelationKernel& kernel, const PeriodicDomain& domain, int offset) {
  const double l = domain.cell_width();
  return kernel.box_pair_integral(0.0, l, offset * l, (offset + 1) * l);
}

double laplace_stencil_entry(const CorrelationKernel& kernel, const PeriodicDomain& domain, int m) {
  const double l = domain.cell_width();
  return kernel.value(l * (m + 1)) - 2.0 * kernel.value(l * m) + kernel.value(l * (m - 1));
}

double edge_weight(const CorrelationKernel& kernel, const PeriodicDomain& domain, int edge_index,
                   int box_index) {
  const double x = domain.edge(edge_index);
  // u = x - y runs over [x - x_{j+1}, x - x_j].
  return kernel.segment_integral(x - domain.edge(box_index + 1), x - domain.edge(box_index));
}

std::vector<double> gram_symbol(const CorrelationKernel& kernel, const PeriodicDomain& domain) {
  const int n = domain.n_cells();
  const double l = domain.cell_width();
  const double sigma_min = kernel.min_width();
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int ks = k <= n / 2 ? k : k - n;
    const double kappa = two_pi * ks / domain.length();
    const double half_sin = std::sin(0.5 * kappa * l);
    auto term = [&](double omega) {
      if (omega == 0.0) return kernel.spectral_density(0.0) * l * l;
      const double b = 2.0 * half_sin / omega;
      return kernel.spectral_density(omega) * b * b;
    };
    double sum = term(kappa);
    for (int p = 1; p < 1'000'000; ++p) {
      const double wp = kappa + two_pi * p / l;
      const double wm = kappa - two_pi * p / l;
      sum += term(wp) + term(wm);
      const double decay = std::min(std::abs(wp), std::abs(wm)) * sigma_min;
      if (0.5 * decay * decay > 50.0) break;
    }
    eig[static_cast<std::size_t>(k)] = sum / l;
  }
  return eig;
}

double CirculantRow::at(int offset) const { return row_[wrap(offset, size())]; }

std::vector<double> CirculantRow::apply(std::span<const double> v, int lo, int hi) const {
  const int n = size();
  if (static_cast<int>(v.size()) != n) throw std::invalid_argument("circulant size mismatch");
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int m = lo; m <= hi; ++m) {
    const double w = at(m);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += w * v[wrap(i + m, n)];
  }
  return out;
}

std::vector<double> CirculantRow::apply_full(std::span<const double> v) const {
  const int n = size();
  return apply(v, -(n / 2), n - n / 2 - 1);
}

PrecomputedOperators::PrecomputedOperators(PeriodicDomain domain, CorrelationKernel kernel,
                                           CirculantRow gram, CirculantRow laplace,
                                           CirculantRow edge, std::vector<double> gram_eigenvalues,
                                           int band_half_width, bool truncated)
    : domain_(std::move(domain)),
      kernel_(std::move(kernel)),
      gram_(std::move(gram)),
      laplace_(std::move(laplace)),
      edge_(std::move(edge)),
      gram_eigenvalues_(std::move(gram_eigenvalues)),
      band_(band_half_width),
      truncated_(truncated) {}

std::vector<double> PrecomputedOperators::apply_gram(std::span<const double> v) const {
  return truncated_ ? gram_.apply(v, -band_, band_) : gram_.apply_full(v);
}

std::vector<double> PrecomputedOperators::apply_laplace(std::span<const double> v) const {
  return truncated_ ? laplace_.apply(v, -band_, band_) : laplace_.apply_full(v);
}

std::vector<double> PrecomputedOperators::edge_values(std::span<const double> v) const {
  return truncated_ ? edge_.apply(v, -band_ - 1, band_) : edge_.apply_full(v);
}

std::vector<double> PrecomputedOperators::solve_gram(std::span<const double> d) const {
  const int n = domain_.n_cells();
  if (static_cast<int>(d.size()) != n) throw std::invalid_argument("solve_gram: size mismatch");
  double d_norm = 0.0;
  for (double v : d) {
    if (!std::isfinite(v)) throw NumericalError("solve_gram: non-finite data");
    d_norm += v * v;
  }
  d_norm = std::sqrt(d_norm);
  std::vector<double> solution(static_cast<std::size_t>(n), 0.0);
  if (d_norm == 0.0) return solution;

  auto modes = dft(FineField(domain_.length(), std::vector<double>(d.begin(), d.end())));
  const int k = modes.half_band();
  for (int j = -k; j <= k; ++j) modes[j] /= gram_eigenvalues_[wrap(j, n)];
  const auto field = idft(modes);
  std::copy(field.samples().begin(), field.samples().end(), solution.begin());

  const auto back = gram_.apply_full(solution);
  double r_norm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = back[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i)];
    r_norm += r * r;
  }
  r_norm = std::sqrt(r_norm);
  if (!(r_norm <= 1e-10 * d_norm))
    throw SingularGram("solve_gram: residual " + detail::sci(r_norm / d_norm) +
                       " exceeds 1e-10 relative");
  return solution;
}

PrecomputedOperators assemble_operators(const CorrelationKernel& kernel,
                                        const PeriodicDomain& domain, double trunc_tol,
                                        IntegralMethod method) {
  if (std::abs(kernel.length() - domain.length()) > 1e-12 * domain.length())
    throw std::invalid_argument("kernel and domain lengths differ");
  if (!(trunc_tol >= 0.0)) throw std::invalid_argument("trunc_tol must be >= 0");

  const int n = domain.n_cells();
  const double l = domain.cell_width();

  const auto sampled = kernel_circulant_eigenvalues(kernel, n);
  const double s_max = *std::max_element(sampled.begin(), sampled.end());
  const double s_min = *std::min_element(sampled.begin(), sampled.end());
  if (s_min < -1e-12 * s_max)
    throw NotPositiveDefinite("sampled kernel has a negative circulant eigenvalue");

  std::vector<double> gram(static_cast<std::size_t>(n)), laplace(gram.size()), edge(gram.size());
  for (int m = 0; m < n; ++m) {
    const auto idx = static_cast<std::size_t>(m);
    laplace[idx] = laplace_stencil_entry(kernel, domain, m);
    if (method == IntegralMethod::analytic) {
      gram[idx] = box_box_overlap(kernel, domain, m);
      edge[idx] = edge_weight(kernel, domain, 0, m);
    } else {
      const int ms = m <= n / 2 ? m : m - n;
      auto c = [&](double x, double y) { return kernel.value(x - y); };
      gram[idx] = integrate_adaptive_2d(c, 0.0, l, ms * l, (ms + 1) * l, 1e-12);
      edge[idx] = integrate_adaptive([&](double y) { return kernel.value(-y); }, ms * l,
                                     (ms + 1) * l, 1e-12);
    }
  }

  // Smallest radius keeping every entry >= trunc_tol * max|row|.
  auto needed = [&](const std::vector<double>& row, bool edge_row) {
    double peak = 0.0;
    for (double v : row) peak = std::max(peak, std::abs(v));
    int band = 0;
    for (int m = 0; m < n; ++m) {
      if (std::abs(row[static_cast<std::size_t>(m)]) < trunc_tol * peak) continue;
      // Edge rows keep offsets [-B-1, B]; symmetric rows keep [-B, B].
      band = std::max(band, edge_row ? std::min(m, n - m - 1) : std::min(m, n - m));
    }
    return band;
  };
  int band = std::max({needed(gram, false), needed(laplace, false), needed(edge, true)});
  const bool truncated = 2 * band + 2 <= n;
  if (!truncated) band = n / 2;

  auto eig = gram_symbol(kernel, domain);
  for (double v : eig)
    if (!(v > 0.0) || !std::isfinite(v))
      throw NotPositiveDefinite("Gram circulant has a non-positive eigenvalue");

  return PrecomputedOperators(domain, kernel, CirculantRow(std::move(gram)),
                              CirculantRow(std::move(laplace)), CirculantRow(std::move(edge)),
                              std::move(eig), band, truncated);
}

std::vector<double> solve_gram(const PrecomputedOperators& ops, std::span<const double> d) {
  return ops.solve_gram(d);
}

}  // namespace ifd
