#include <doctest.h>

#include <cmath>
#include <random>

#include "ifd/errors.hpp"
#include "ifd/prior.hpp"
#include "oracles.hpp"

using namespace ifd;

namespace {

/// int_box_0 int_box_m C(x - y) reduced to one dimension:
/// int (l - |u + m l|)_+ C(u) du.
double overlap_oracle(const oracle::Kernel& c, double l, int m, double step) {
  return oracle::quad_split([&](double u) { return (l - std::abs(u + m * l)) * c(u); }, -(m + 1) * l,
                            -(m - 1) * l, step);
}

oracle::Kernel brute(double L, double sigma, double a = 1.0, int images = 64) {
  return {L, {{a, sigma}}, images};
}

}  // namespace

TEST_CASE("kernel is even and peaks at the origin") {
  const auto k = CorrelationKernel::gaussian(64.0, 0.5);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    CHECK(k.value(x) == k.value(-x));
    CHECK(kernel_value(k, x) <= k.value(0.0));
  }
  CHECK(k.value(0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("automatic image count matches a 64-image brute-force sum") {
  for (auto [L, sigma] : {std::pair{64.0, 0.5}, std::pair{16.0, 4.0}, std::pair{8.0, 8.0}}) {
    const auto k = CorrelationKernel::gaussian(L, sigma, 1.5);
    const auto ref = brute(L, sigma, 1.5);
    for (double x = -L; x <= L; x += L / 37.0)
      CHECK(std::abs(k.value(x) - ref(x)) < 1e-12 * ref(0.0));
  }
}

TEST_CASE("kernel validation") {
  CHECK_THROWS(CorrelationKernel(64.0, {}));
  CHECK_THROWS(CorrelationKernel(64.0, {{-1.0, 0.5}}));
  CHECK_THROWS(CorrelationKernel(64.0, {{1.0, 0.0}}));
  // Two images are not enough for sigma = 16 on a period of 8.
  CHECK_THROWS(CorrelationKernel(8.0, {{1.0, 16.0}}, 2));
  CHECK_NOTHROW(CorrelationKernel(64.0, {{1.0, 0.5}}, 1));
  CHECK(CorrelationKernel::gaussian(64.0, 0.5).images() >= 1);
}

TEST_CASE("sampled kernel is positive semidefinite on the circle") {
  for (double sigma : {0.5, 2.0, 8.0}) {
    const auto ev = kernel_circulant_eigenvalues(CorrelationKernel::gaussian(64.0, sigma), 64);
    const double top = *std::max_element(ev.begin(), ev.end());
    for (double v : ev) CHECK(v >= -1e-12 * top);
  }
}

TEST_CASE("segment and total integrals") {
  const auto k = CorrelationKernel(64.0, {{1.0, 0.5}, {0.3, 2.0}});
  const oracle::Kernel ref{64.0, {{1.0, 0.5}, {0.3, 2.0}}, 4};
  CHECK(k.total_integral() == doctest::Approx(std::sqrt(2.0 * oracle::pi) * (0.5 + 0.3 * 2.0)).epsilon(1e-14));
  for (auto [a, b] : {std::pair{-0.3, 0.7}, std::pair{2.0, 5.0}, std::pair{-40.0, -30.0}, std::pair{10.0, 12.0}})
    CHECK(std::abs(k.segment_integral(a, b) - oracle::quad_split(ref, a, b, 0.25)) < 1e-13);
}

TEST_CASE("narrow kernel overlap approaches a sigma sqrt(2 pi) l") {
  const double l = 1.0, sigma = 0.01 * l;
  const PeriodicDomain d(64.0, 64);
  const auto k = CorrelationKernel::gaussian(64.0, sigma, 2.0);
  const double v = box_box_overlap(k, d, 0);
  const double ref = overlap_oracle(brute(64.0, sigma, 2.0, 1), l, 0, 0.01);
  CHECK(v == doctest::Approx(ref).epsilon(1e-9));
  // Up to the boundary loss 2 a sigma^2.
  CHECK(v == doctest::Approx(2.0 * sigma * std::sqrt(2.0 * oracle::pi) * l).epsilon(2e-2));
}

TEST_CASE("box overlap is even in the offset and decays") {
  const PeriodicDomain d(64.0, 64);
  const auto k = CorrelationKernel::gaussian(64.0, 0.5);
  for (int m = 1; m < 10; ++m) CHECK(box_box_overlap(k, d, m) == doctest::Approx(box_box_overlap(k, d, -m)).epsilon(1e-15));
  CHECK(std::abs(box_box_overlap(k, d, 12)) < 1e-14);
  CHECK(std::abs(box_box_overlap(k, d, 25)) < 1e-14);
}

TEST_CASE("box overlap matches the reduced one-dimensional oracle") {
  for (double sigma : {0.5, 2.0}) {
    const PeriodicDomain d(32.0, 32);
    const auto k = CorrelationKernel::gaussian(32.0, sigma);
    const auto ref = brute(32.0, sigma, 1.0, 8);
    for (int m = -8; m <= 8; ++m) CHECK(std::abs(box_box_overlap(k, d, m) - overlap_oracle(ref, 1.0, m, 0.25)) < 1e-12);
  }
}

TEST_CASE("Laplace stencil") {
  const PeriodicDomain d(64.0, 64);
  const auto k = CorrelationKernel::gaussian(64.0, 0.5);
  const auto ref = brute(64.0, 0.5);
  CHECK(laplace_stencil_entry(k, d, 0) == doctest::Approx(2.0 * k.value(1.0) - 2.0 * k.value(0.0)).epsilon(1e-15));
  CHECK(laplace_stencil_entry(k, d, 0) < 0.0);
  double sum = 0.0;
  for (int m = 0; m < 64; ++m) {
    const double v = laplace_stencil_entry(k, d, m);
    sum += v;
    CHECK(std::abs(v - (ref(m + 1.0) - 2.0 * ref(m) + ref(m - 1.0))) < 1e-13);
  }
  CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("edge weights partition the total integral and match quadrature") {
  const PeriodicDomain d(64.0, 64);
  const auto k = CorrelationKernel::gaussian(64.0, 0.5);
  const auto ref = brute(64.0, 0.5, 1.0, 2);
  for (int i : {0, 5, 63}) {
    double sum = 0.0;
    for (int j = 0; j < 64; ++j) sum += edge_weight(k, d, i, j);
    CHECK(sum == doctest::Approx(k.total_integral()).epsilon(1e-10));
  }
  for (int j = -6; j <= 6; ++j)
    CHECK(std::abs(edge_weight(k, d, 0, j) - oracle::quad_split([&](double y) { return ref(-y); }, j, j + 1.0, 0.25)) < 1e-10);
  CHECK(std::abs(edge_weight(k, d, 0, 20)) < 1e-14);
}

TEST_CASE("assembled band for the reference prior") {
  const auto ops = assemble_operators(CorrelationKernel::gaussian(64.0, 0.5), PeriodicDomain(64.0, 64));
  CHECK(ops.truncated());
  // Measured at trunc_tol = 1e-12 and pinned.
  CHECK(ops.band_half_width() == 4);
  CHECK(ops.band_half_width() < 64 / 4);
}

TEST_CASE("assembled Gram equals a dense two-dimensional quadrature for N = 16") {
  const PeriodicDomain d(16.0, 16);
  const auto ops = assemble_operators(CorrelationKernel::gaussian(16.0, 0.5), d);
  const auto dense = oracle::dense_gram(brute(16.0, 0.5, 1.0, 3), 16, 1.0, 0.5);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) CHECK(std::abs(ops.gram().at(j - i) - dense(i, j)) < 1e-9);
}

TEST_CASE("analytic and quadrature assembly agree on every banded entry") {
  const PeriodicDomain d(64.0, 64);
  const auto k = CorrelationKernel(64.0, {{1.0, 0.5}, {0.2, 1.5}});
  const auto a = assemble_operators(k, d);
  const auto q = assemble_operators(k, d, 1e-12, IntegralMethod::quadrature);
  const int b = a.band_half_width() + 1;
  for (int m = -b; m <= b; ++m) {
    CHECK(std::abs(a.gram().at(m) - q.gram().at(m)) < 1e-9);
    CHECK(std::abs(a.edge_weights().at(m) - q.edge_weights().at(m)) < 1e-9);
    CHECK(std::abs(a.laplace_stencil().at(m) - q.laplace_stencil().at(m)) < 1e-9);
  }
}

TEST_CASE("doubling the image count leaves the operators unchanged") {
  const PeriodicDomain d(64.0, 64);
  const auto k = CorrelationKernel::gaussian(64.0, 0.5);
  const auto a = assemble_operators(k, d);
  const auto b = assemble_operators(k.with_images(2 * k.images()), d);
  for (int m = 0; m < 64; ++m) {
    CHECK(std::abs(a.gram().at(m) - b.gram().at(m)) < 1e-12);
    CHECK(std::abs(a.edge_weights().at(m) - b.edge_weights().at(m)) < 1e-12);
    CHECK(std::abs(a.laplace_stencil().at(m) - b.laplace_stencil().at(m)) < 1e-12);
  }
}

TEST_CASE("Gram symbol equals the direct DFT of the Gram row") {
  for (double sigma : {0.5, 1.0}) {
    const PeriodicDomain d(64.0, 64);
    const auto ops = assemble_operators(CorrelationKernel::gaussian(64.0, sigma), d);
    const auto& ev = ops.gram_eigenvalues();
    const double top = *std::max_element(ev.begin(), ev.end());
    for (int k = 0; k < 64; ++k) {
      double direct = 0.0;
      for (int m = 0; m < 64; ++m) direct += ops.gram().at(m) * std::cos(2.0 * oracle::pi * k * m / 64.0);
      CHECK(ev[static_cast<std::size_t>(k)] > 0.0);
      CHECK(std::abs(ev[static_cast<std::size_t>(k)] - direct) < 1e-13 * top);
    }
  }
}

TEST_CASE("operators are shift invariant") {
  const auto ops = assemble_operators(CorrelationKernel::gaussian(32.0, 0.5), PeriodicDomain(32.0, 32));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<double> v(32), rot(32);
  for (auto& x : v) x = g(rng);
  for (int i = 0; i < 32; ++i) rot[static_cast<std::size_t>((i + 1) % 32)] = v[static_cast<std::size_t>(i)];
  for (auto apply : {&PrecomputedOperators::apply_gram, &PrecomputedOperators::apply_laplace,
                     &PrecomputedOperators::edge_values}) {
    const auto a = (ops.*apply)(v);
    const auto b = (ops.*apply)(rot);
    for (int i = 0; i < 32; ++i) CHECK(b[static_cast<std::size_t>((i + 1) % 32)] == doctest::Approx(a[static_cast<std::size_t>(i)]).epsilon(1e-14));
  }
}

TEST_CASE("narrow prior collapses the stencil to (1, -2, 1)") {
  const PeriodicDomain d(64.0, 64);
  const auto ops = assemble_operators(CorrelationKernel::gaussian(64.0, 0.01), d);
  const double centre = ops.laplace_stencil().at(0);
  CHECK(ops.laplace_stencil().at(1) / centre == doctest::Approx(-0.5).epsilon(1e-2));
  CHECK(ops.laplace_stencil().at(-1) / centre == doctest::Approx(-0.5).epsilon(1e-2));
  for (int m = 2; m <= 32; ++m) CHECK(std::abs(ops.laplace_stencil().at(m)) < 1e-12 * std::abs(centre));
}

TEST_CASE("operators over-smooth priors are rejected") {
  CHECK_THROWS_AS(assemble_operators(CorrelationKernel::gaussian(64.0, 40.0), PeriodicDomain(64.0, 64)),
                  NotPositiveDefinite);
  CHECK_THROWS(assemble_operators(CorrelationKernel::gaussian(32.0, 0.5), PeriodicDomain(64.0, 64)));
}

TEST_CASE("solve_gram contract") {
  const auto ops = assemble_operators(CorrelationKernel::gaussian(64.0, 0.5), PeriodicDomain(64.0, 64));
  std::vector<double> e0(64, 0.0);
  e0[0] = 1.0;
  const auto back = ops.solve_gram(ops.gram().apply_full(e0));
  for (int i = 0; i < 64; ++i) CHECK(std::abs(back[static_cast<std::size_t>(i)] - e0[static_cast<std::size_t>(i)]) < 1e-10);

  const auto c = ops.solve_gram(std::vector<double>(64, 2.0));
  for (double v : c) CHECK(v == doctest::Approx(c[0]).epsilon(1e-12));
  CHECK(c[0] == doctest::Approx(2.0 / ops.gram_eigenvalues()[0]).epsilon(1e-12));

  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::vector<double> d(64);
  for (auto& v : d) v = g(rng);
  const auto dp = solve_gram(ops, d);
  auto r = ops.gram().apply_full(dp);
  double rn = 0.0, dn = 0.0;
  for (int i = 0; i < 64; ++i) {
    rn += std::pow(r[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i)], 2);
    dn += d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
  }
  CHECK(std::sqrt(rn / dn) < 1e-10);

  d[3] = std::nan("");
  CHECK_THROWS_AS(ops.solve_gram(d), NumericalError);
}

TEST_CASE("solve_gram reports an unsolvable Gram") {
  const auto ops = assemble_operators(CorrelationKernel::gaussian(64.0, 8.0), PeriodicDomain(64.0, 64));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> d(64);
  for (auto& v : d) v = g(rng);
  CHECK_THROWS_AS(ops.solve_gram(d), SingularGram);
}

TEST_CASE("box response partitions the circle") {
  const BoxResponse r(PeriodicDomain(8.0, 8));
  CHECK(r.box_of(0.5) == 0);
  CHECK(r.box_of(1.0) == 0);
  CHECK(r.box_of(7.9) == 7);
  CHECK(r.box_of(-0.1) == 7);
  const auto moved = r.with_moved_edge(3, 0.25);
  CHECK(moved.width(2) == doctest::Approx(1.25));
  CHECK(moved.width(3) == doctest::Approx(0.75));
  double total = 0.0;
  for (int i = 0; i < moved.size(); ++i) total += moved.width(i);
  CHECK(total == doctest::Approx(8.0));
}
