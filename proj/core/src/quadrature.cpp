#include "ifd/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "ifd/errors.hpp"

namespace ifd {

namespace {

constexpr unsigned kMaxDepth = 30;

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
  if (a == b) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  // boost stops on error <= tol * L1. Translate the absolute target into a
  // relative one using a single-panel estimate of L1.
  double l1 = 0.0;
  double error = 0.0;
  GK::integrate(f, a, b, 0, 0.0, &error, &l1);
  const double rel = l1 > 0.0 ? std::max(0.1 * abs_tol / l1, 1e-15) : 1.0;
  const double value = GK::integrate(f, a, b, kMaxDepth, rel, &error, &l1);
  if (!std::isfinite(value) || error > abs_tol)
    throw QuadratureFailure("adaptive quadrature on [" + detail::sci(a) + ", " +
                            detail::sci(b) + "] reached error " + detail::sci(error) +
                            " > " + detail::sci(abs_tol));
  return value;
}

double integrate_adaptive_2d(const std::function<double(double, double)>& f, double ax, double bx,
                             double ay, double by, double abs_tol) {
  const double inner_tol = abs_tol / (4.0 * std::max(1.0, std::abs(bx - ax)));
  auto inner = [&](double x) {
    return integrate_adaptive([&](double y) { return f(x, y); }, ay, by, inner_tol);
  };
  return integrate_adaptive(inner, ax, bx, abs_tol / 2.0);
}

}  // namespace ifd
