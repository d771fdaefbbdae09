#pragma once

#include <functional>

namespace ifd {

/// Adaptive Gauss-Kronrod integral of `f` over [a, b]. Throws
/// QuadratureFailure if the error estimate stays above `abs_tol`.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12);

/// Iterated adaptive integral of f(x, y) over [ax, bx] x [ay, by].
double integrate_adaptive_2d(const std::function<double(double, double)>& f, double ax, double bx,
                             double ay, double by, double abs_tol = 1e-12);

}  // namespace ifd
