#include "ifd/posterior.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <stdexcept>

#include "ifd/errors.hpp"
#include "ifd/quadrature.hpp"

namespace ifd {

struct PosteriorCovariance::Factor {
  Eigen::LLT<Eigen::MatrixXd> llt;
};

std::vector<double> dense_gram(const CorrelationKernel& kernel, const BoxResponse& boxes) {
  const int n = boxes.size();
  std::vector<double> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v =
          kernel.box_pair_integral(boxes.left(i), boxes.right(i), boxes.left(j), boxes.right(j));
      a[static_cast<std::size_t>(i * n + j)] = v;
      a[static_cast<std::size_t>(j * n + i)] = v;
    }
  return a;
}

PosteriorCovariance::PosteriorCovariance(CorrelationKernel kernel, BoxResponse boxes)
    : kernel_(std::move(kernel)), boxes_(std::move(boxes)), factor_(std::make_unique<Factor>()) {
  const int n = boxes_.size();
  const auto a = dense_gram(kernel_, boxes_);
  Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(a.data(), n, n);
  factor_->llt.compute(m);
  if (factor_->llt.info() != Eigen::Success)
    throw NotPositiveDefinite("dense Gram matrix is not positive definite");
}

PosteriorCovariance::~PosteriorCovariance() = default;
PosteriorCovariance::PosteriorCovariance(PosteriorCovariance&&) noexcept = default;
PosteriorCovariance& PosteriorCovariance::operator=(PosteriorCovariance&&) noexcept = default;

std::vector<double> PosteriorCovariance::response_weights(double x) const {
  std::vector<double> e(static_cast<std::size_t>(boxes_.size()));
  for (int j = 0; j < boxes_.size(); ++j)
    e[static_cast<std::size_t>(j)] = kernel_.segment_integral(x - boxes_.right(j), x - boxes_.left(j));
  return e;
}

std::vector<double> PosteriorCovariance::solve(const std::vector<double>& b) const {
  if (static_cast<int>(b.size()) != boxes_.size()) throw std::invalid_argument("solve: size mismatch");
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::VectorXd x = factor_->llt.solve(rhs);
  return {x.data(), x.data() + x.size()};
}

double PosteriorCovariance::covariance(double x, double y) const {
  const auto ex = response_weights(x);
  const auto ey = response_weights(y);
  const auto v = solve(ey);
  double quad = 0.0;
  for (std::size_t i = 0; i < ex.size(); ++i) quad += ex[i] * v[i];
  return kernel_.value(x - y) - quad;
}

double PosteriorCovariance::asymmetry(double x, double eps) const {
  return covariance(x, x + eps) - covariance(x, x - eps);
}

double PosteriorCovariance::third_term(int box, double eps) const {
  return integrate_adaptive([&](double x) { return asymmetry(x, eps) / eps; }, boxes_.left(box),
                            boxes_.right(box), 1e-11);
}

double posterior_cov_asymmetry(const CorrelationKernel& kernel, const PeriodicDomain& domain,
                               double x, double eps) {
  if (!(eps > 0.0 && eps < domain.cell_width()))
    throw std::invalid_argument("posterior_cov_asymmetry: need 0 < eps < l");
  return PosteriorCovariance(kernel, BoxResponse(domain)).asymmetry(x, eps);
}

}  // namespace ifd
