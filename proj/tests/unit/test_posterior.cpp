#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <functional>
#include <random>

#include "ifd/posterior.hpp"
#include "oracles.hpp"

using namespace ifd;

namespace {

const CorrelationKernel& kernel16() {
  static const auto k = CorrelationKernel::gaussian(16.0, 0.5);
  return k;
}

const PosteriorCovariance& uniform16() {
  static const PosteriorCovariance p(kernel16(), BoxResponse(PeriodicDomain(16.0, 16)));
  return p;
}

}  // namespace

TEST_CASE("dense Gram matches nested quadrature") {
  const auto a = dense_gram(kernel16(), BoxResponse(PeriodicDomain(16.0, 16)));
  const auto ref = oracle::dense_gram({16.0, {{1.0, 0.5}}, 3}, 16, 1.0, 0.5);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) CHECK(std::abs(a[static_cast<std::size_t>(16 * i + j)] - ref(i, j)) < 1e-9);
}

TEST_CASE("dense solve agrees with the circulant solve") {
  const auto ops = assemble_operators(kernel16(), PeriodicDomain(16.0, 16));
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  std::vector<double> d(16);
  for (auto& v : d) v = g(rng);
  const auto a = uniform16().solve(d);
  const auto b = ops.solve_gram(d);
  for (int i = 0; i < 16; ++i) CHECK(a[static_cast<std::size_t>(i)] == doctest::Approx(b[static_cast<std::size_t>(i)]).epsilon(1e-10));
}

TEST_CASE("posterior covariance is symmetric and non-negative on the diagonal") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 16.0);
  for (int t = 0; t < 20; ++t) {
    const double x = u(rng), y = u(rng);
    CHECK(uniform16().covariance(x, y) == doctest::Approx(uniform16().covariance(y, x)).epsilon(1e-12));
    CHECK(uniform16().variance(x) > -1e-12);
  }
}

TEST_CASE("box integrals carry no posterior uncertainty") {
  // int_box int_box D = A_ii - (A A^-1 A)_ii = 0.
  // The integral is a cancellation to zero, so a fixed Gauss-Legendre
  // product rule is used rather than a relative-tolerance adaptive one.
  using rule = boost::math::quadrature::gauss<double, 20>;
  auto over_box = [](const std::function<double(double)>& f) {
    double t = 0.0;
    for (int p = 0; p < 4; ++p) t += rule::integrate(f, 3.0 + 0.25 * p, 3.25 + 0.25 * p);
    return t;
  };
  const double v = over_box([&](double x) { return over_box([&](double y) { return uniform16().covariance(x, y); }); });
  double scale = 0.0;
  for (double x : {3.1, 3.5, 3.9}) scale = std::max(scale, uniform16().variance(x));
  CHECK(std::abs(v) < 1e-10 * std::max(scale, 1.0));
}

TEST_CASE("asymmetry vanishes at box centres and edges") {
  for (int i = 0; i < 16; ++i)
    for (double x : {i * 1.0, i + 0.5})
      for (double eps : {0.01, 0.25, 0.49, 0.99})
        CHECK(std::abs(uniform16().asymmetry(x, eps)) < 1e-8 * uniform16().variance(i + 0.25));
  CHECK(std::abs(posterior_cov_asymmetry(kernel16(), PeriodicDomain(16.0, 16), 5.0, 0.25)) < 1e-10);
}

TEST_CASE("pointwise asymmetry at generic positions inside a box is not zero") {
  // The homogeneous grid is only invariant under shifts by whole boxes and
  // reflections about centres and edges; between those points the two
  // one-sided covariances differ.
  double worst = 0.0;
  for (double x : {3.1, 3.2, 3.3, 3.4}) worst = std::max(worst, std::abs(uniform16().asymmetry(x, 0.25)) / uniform16().variance(x));
  CHECK(worst > 1e-4);
}

TEST_CASE("box-integrated trace term vanishes on the homogeneous grid") {
  for (int i : {0, 7, 15})
    for (double eps : {0.05, 0.25, 0.75}) CHECK(std::abs(uniform16().third_term(i, eps)) * eps < 1e-8);
}

TEST_CASE("a widened box breaks the symmetry") {
  const PosteriorCovariance broken(kernel16(), BoxResponse(PeriodicDomain(16.0, 16)).with_moved_edge(8, 0.3));
  double worst_point = 0.0;
  for (double x = 6.0; x <= 10.0; x += 0.125)
    worst_point = std::max(worst_point, std::abs(broken.asymmetry(x, 0.25)) / broken.variance(x + 1e-3));
  CHECK(worst_point > 1e-4);
  CHECK(std::abs(broken.third_term(7, 0.25)) * 0.25 > 1e-4);
}

TEST_CASE("asymmetry precondition") {
  CHECK_THROWS(posterior_cov_asymmetry(kernel16(), PeriodicDomain(16.0, 16), 1.0, 0.0));
  CHECK_THROWS(posterior_cov_asymmetry(kernel16(), PeriodicDomain(16.0, 16), 1.0, 1.0));
}
