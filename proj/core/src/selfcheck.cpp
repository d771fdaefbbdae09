#include "ifd/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ifd/posterior.hpp"
#include "ifd/prior.hpp"

namespace ifd {

namespace {

CheckResult make(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, std::isfinite(value) && value < threshold};
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<CheckResult> run_self_checks() {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  const auto kernel = CorrelationKernel::gaussian(64.0, 0.5);
  const PeriodicDomain domain(64.0, 64);
  const auto ops = assemble_operators(kernel, domain);

  {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> d(64);
      for (auto& v : d) v = uni(rng);
      const auto dp = ops.solve_gram(d);
      auto r = ops.gram().apply_full(dp);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= d[i];
      worst = std::max(worst, norm(r) / norm(d));
    }
    out.push_back(make("gram solve residual (N=64, sigma=0.5)", worst, 1e-10));
  }

  {
    const auto quad = assemble_operators(kernel, domain, 1e-12, IntegralMethod::quadrature);
    double worst = 0.0;
    const int band = ops.band_half_width() + 1;
    for (int m = -band; m <= band; ++m) {
      worst = std::max(worst, std::abs(ops.gram().at(m) - quad.gram().at(m)));
      worst = std::max(worst, std::abs(ops.laplace_stencil().at(m) - quad.laplace_stencil().at(m)));
      worst = std::max(worst, std::abs(ops.edge_weights().at(m) - quad.edge_weights().at(m)));
    }
    out.push_back(make("analytic vs quadrature operator entries", worst, 1e-9));
  }

  {
    const PeriodicDomain small(16.0, 16);
    const auto small_ops = assemble_operators(CorrelationKernel::gaussian(16.0, 0.5), small);
    const PosteriorCovariance dense(small_ops.kernel(), BoxResponse(small));
    std::vector<double> d(16);
    for (auto& v : d) v = uni(rng);
    const auto a = small_ops.solve_gram(d);
    const auto b = dense.solve(d);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    out.push_back(make("circulant vs dense Gram solve (N=16)", diff / norm(b), 1e-9));
  }

  {
    // Reflection about box centres and edges maps D(x, x+eps) onto
    // D(x, x-eps), so the asymmetry must vanish there.
    const PeriodicDomain post_domain(16.0, 16);
    const auto k16 = CorrelationKernel::gaussian(16.0, 0.5);
    const PosteriorCovariance post(k16, BoxResponse(post_domain));
    double worst = 0.0;
    for (int i = 0; i < 16; ++i)
      for (double x : {i * 1.0, i + 0.5})
        for (double eps : {0.05, 0.2, 0.45})
          worst = std::max(worst, std::abs(post.asymmetry(x, eps)) / post.variance(x + 0.25));
    out.push_back(make("posterior asymmetry at box centres and edges", worst, 1e-8));

    double third = 0.0;
    for (int i = 0; i < 16; ++i)
      for (double eps : {0.05, 0.2, 0.45})
        third = std::max(third, std::abs(post.third_term(i, eps)) * eps / k16.value(0.0));
    out.push_back(make("box-integrated trace term", third, 1e-8));
  }
  return out;
}

}  // namespace ifd
