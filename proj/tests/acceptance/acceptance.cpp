// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 3 6        run the listed criteria
//
// Exit status is 0 when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ifd/config.hpp"
#include "ifd/harness.hpp"
#include "ifd/integrator.hpp"
#include "ifd/posterior.hpp"
#include "ifd/prior.hpp"
#include "ifd/schemes.hpp"
#include "oracles.hpp"

using namespace ifd;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

const char* kBaseline = R"(
domain.length = 64
domain.n_cells = 64
domain.fine_factor = 4
kernel.sigma = 0.5
scheme = box_ifd
params.eta = 5
integrator.method = rk4
integrator.record_every = 0
initial_condition = paper_gaussian_literal
)";

ExperimentConfig baseline(const std::string& extra = "") { return parse_config(std::string(kBaseline) + extra); }

DataVector band_state(const oracle::Band& b) {
  return DataVector::fourier(SpectralField(64.0, std::vector<Complex>(b.begin(), b.end())));
}

Verdict criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = compare_schemes(baseline());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double ifd = rows.at(0).error.l2, fd = rows.at(1).error.l2;
  const bool ok = !rows[0].status.diverged && !rows[1].status.diverged && ifd <= 0.95 * fd && secs < 60.0;
  return {ok, fmt("l2 box_ifd@64 = %.4g, fd@64 = %.4g vs fd@256 (ratio %.3g), %.1f s", ifd, fd, ifd / fd, secs)};
}

Verdict criterion2() {
  const auto rows = convergence_study(baseline(), {64, 128});
  const double e64 = rows.at(0).error.l2, e128 = rows.at(1).error.l2;
  return {e128 <= 0.9 * e64, fmt("l2 box_ifd@64 = %.4g, @128 = %.4g vs fd@512 (reduction %.1f%%)", e64, e128,
                                 100.0 * (1.0 - e128 / e64))};
}

Verdict criterion3() {
  std::mt19937_64 rng(3003);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto b = oracle::random_hermitian_band(31, rng, 0.02);
    const auto r = fourier_ifd_rhs(band_state(b), BurgersParams{5.0, {}});
    const auto ref = oracle::pseudo_spectral_rhs(b, 64.0, 5.0);
    double scale = 0.0, diff = 0.0;
    for (int j = -31; j <= 31; ++j) {
      scale = std::max(scale, std::abs(ref[static_cast<std::size_t>(j + 31)]));
      diff = std::max(diff, std::abs(r.spectrum()[j] - ref[static_cast<std::size_t>(j + 31)]));
    }
    worst = std::max(worst, diff / scale);
  }
  return {worst < 1e-10, fmt("max relative deviation from the padded pseudo-spectral oracle %.3g over 100 states", worst)};
}

Verdict criterion4() {
  std::mt19937_64 rng(4004);
  const auto d = band_state(oracle::random_hermitian_band(31, rng, 0.02));
  const BurgersParams p{5.0, {}};
  const int F = 40;
  std::vector<std::function<double(double)>> spectra = {
      [](double) { return 1.0; },
      [](double k) { return std::pow(1.0 + k * k, -2.0); },
      [](double k) { return std::exp(-0.25 * k * k); },
      [](double k) { return 3.0 + std::cos(k); },
      [](double k) { return 1.0 / (0.1 + std::abs(k)); },
  };
  std::vector<DataVector> out;
  for (const auto& s : spectra) {
    std::vector<double> ps(2 * F + 1);
    for (int j = -F; j <= F; ++j) ps[static_cast<std::size_t>(j + F)] = s(2.0 * oracle::pi * j / 64.0);
    out.push_back(fourier_ifd_rhs_generic(d, ps, p));
  }
  double worst = 0.0;
  const double scale = out[0].spectrum().max_abs();
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      for (int j = -31; j <= 31; ++j)
        worst = std::max(worst, std::abs(out[a].spectrum()[j] - out[b].spectrum()[j]) / scale);
  return {worst < 1e-10, fmt("max pairwise relative difference over 5 spectra %.3g", worst)};
}

Verdict criterion5() {
  const auto kernel = CorrelationKernel::gaussian(64.0, 0.5);
  const PeriodicDomain domain(64.0, 64);
  const PosteriorCovariance post(kernel, BoxResponse(domain));
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> ux(0.0, 64.0), ue(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const double x = ux(rng);
    double eps = ue(rng);
    while (eps == 0.0) eps = ue(rng);
    worst = std::max(worst, std::abs(post.asymmetry(x, eps)) / post.variance(x));
  }
  // The same quantity integrated over boxes, as it enters the box scheme.
  double integrated = 0.0;
  for (int i : {0, 21, 42})
    for (double eps : {0.1, 0.5, 0.9})
      integrated = std::max(integrated, std::abs(post.third_term(i, eps)) * eps / kernel.value(0.0));

  const PosteriorCovariance broken(kernel, BoxResponse(domain).with_moved_edge(32, 0.3));
  double control = 0.0;
  for (double x = 30.0; x <= 34.0; x += 0.125)
    control = std::max(control, std::abs(broken.asymmetry(x, 0.25)) / broken.variance(x + 1e-3));

  const bool ok = worst < 1e-8 && control > 1e-4;
  return {ok, fmt("pointwise max |D(x,x+e)-D(x,x-e)|/D(x,x) = %.3g at 50 random (x,e) (need < 1e-8); "
                  "box-integrated %.3g; control %.3g",
                  worst, integrated, control)};
}

Verdict criterion6() {
  const auto ops = assemble_operators(CorrelationKernel::gaussian(64.0, 0.5), PeriodicDomain(64.0, 64));
  std::mt19937_64 rng(6006);
  std::normal_distribution<double> g(1.0, 1.0);
  double worst_sum = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> d(64);
    for (auto& v : d) v = g(rng);
    const auto r = box_ifd_rhs(DataVector::box(64.0, d), ops, BurgersParams{5.0, {}});
    double sum = 0.0, n2 = 0.0;
    for (double v : r.values()) {
      sum += v;
      n2 += v * v;
    }
    worst_sum = std::max(worst_sum, std::abs(sum) / std::sqrt(n2));
  }
  const auto run_result = run(baseline());
  double mode0 = 0.0, swapped0 = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto b = oracle::random_hermitian_band(31, rng);
    const auto q = fourier_ifd_rhs(band_state(b), BurgersParams{0.0, {}});
    mode0 = std::max(mode0, std::abs(q.spectrum()[0]) / q.spectrum().max_abs());
    const auto s = oracle::swapped_index_quadratic(b, 64.0);
    double smax = 0.0;
    for (const auto& v : s) smax = std::max(smax, std::abs(v));
    swapped0 = std::max(swapped0, std::abs(s[31]) / smax);
  }
  const bool ok = worst_sum < 1e-10 && !run_result.status.diverged && run_result.mass_drift < 1e-9 &&
                  mode0 < 1e-12 && swapped0 > 1e-12;
  return {ok, fmt("rhs sum %.3g; run mass drift %.3g; fourier mode-0 %.3g; printed-index variant mode-0 %.3g",
                  worst_sum, run_result.mass_drift, mode0, swapped0)};
}

Verdict criterion7() {
  const PeriodicDomain domain(64.0, 64);
  const auto kernel = CorrelationKernel::gaussian(64.0, 0.5);
  const auto ops = assemble_operators(kernel, domain);
  const oracle::Kernel ref{64.0, {{1.0, 0.5}}, 2};
  double entries = 0.0;
  const int band = ops.band_half_width();
  for (int m = -band - 1; m <= band; ++m) {
    const double gram = oracle::quad_split(
        [&](double u) { return (1.0 - std::abs(u + m)) * ref(u); }, -(m + 1.0), -(m - 1.0), 0.25);
    const double edge = oracle::quad_split([&](double y) { return ref(-y); }, m, m + 1.0, 0.25);
    const double lap = ref(m + 1.0) - 2.0 * ref(m) + ref(m - 1.0);
    entries = std::max({entries, std::abs(ops.gram().at(m) - gram), std::abs(ops.edge_weights().at(m) - edge),
                        std::abs(ops.laplace_stencil().at(m) - lap)});
  }

  std::mt19937_64 rng(7007);
  std::normal_distribution<double> g;
  double residual = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> d(64);
    for (auto& v : d) v = g(rng);
    const auto dp = ops.solve_gram(d);
    const auto ad = ops.gram().apply_full(dp);
    double r = 0.0, n = 0.0;
    for (int i = 0; i < 64; ++i) {
      r += std::pow(ad[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i)], 2);
      n += d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
    }
    residual = std::max(residual, std::sqrt(r / n));
  }

  const auto small = assemble_operators(CorrelationKernel::gaussian(16.0, 0.5), PeriodicDomain(16.0, 16));
  const auto dense = oracle::dense_gram({16.0, {{1.0, 0.5}}, 3}, 16, 1.0, 0.5);
  double dense_gap = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) dense_gap = std::max(dense_gap, std::abs(small.gram().at(j - i) - dense(i, j)));
  Eigen::VectorXd dv(16);
  std::vector<double> d16(16);
  for (int i = 0; i < 16; ++i) dv(i) = d16[static_cast<std::size_t>(i)] = g(rng);
  const Eigen::VectorXd x = dense.ldlt().solve(dv);
  const auto y = small.solve_gram(d16);
  double solve_gap = 0.0;
  for (int i = 0; i < 16; ++i) solve_gap = std::max(solve_gap, std::abs(x(i) - y[static_cast<std::size_t>(i)]) / x.cwiseAbs().maxCoeff());

  const bool ok = entries < 1e-9 && residual < 1e-10 && dense_gap < 1e-9 && solve_gap < 1e-9;
  return {ok, fmt("banded entries vs quadrature %.3g; solve residual %.3g; N=16 dense Gram %.3g, solve %.3g", entries,
                  residual, dense_gap, solve_gap)};
}

Verdict criterion8() {
  std::string text = kBaseline;
  text.replace(text.find("kernel.sigma = 0.5"), 18, "kernel.sigma = 8");
  const auto bad = run(parse_config(text));
  const auto good = run(baseline());
  const bool ok = bad.status.diverged && bad.status.time < bad.config.t_end.value() && !good.status.diverged;
  return {ok, fmt("sigma=8 diverged=%g at t=%.4g (t_end %.4g); sigma=0.5 completed=%g", bad.status.diverged ? 1.0 : 0.0,
                  bad.status.time, bad.config.t_end.value(), good.status.diverged ? 0.0 : 1.0) +
                  " [" + bad.status.reason.substr(0, 60) + "]"};
}

Verdict criterion9() {
  auto error = [](Method m, double dt) {
    IntegratorConfig c;
    c.method = m;
    c.dt = dt;
    c.t_end = 1.0;
    const RhsFunction rhs = [](const DataVector& d) { return (-1.0) * d; };
    const auto traj = integrate(rhs, DataVector::samples(1.0, {1.0}), c);
    return std::abs(traj.final_state.values()[0] - std::exp(-1.0));
  };
  double euler = 1e300, rk4 = 1e300;
  for (double dt : {0.1, 0.05, 0.025}) {
    euler = std::min(euler, oracle::observed_order(error(Method::euler, dt), error(Method::euler, dt / 2)));
    rk4 = std::min(rk4, oracle::observed_order(error(Method::rk4, dt), error(Method::rk4, dt / 2)));
  }
  return {euler >= 0.95 && rk4 >= 3.9, fmt("observed order euler %.4f, rk4 %.4f", euler, rk4)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
      {"IFD beats FD at equal resolution", criterion1},
      {"resolution improvement", criterion2},
      {"Galerkin equivalence", criterion3},
      {"prior drop-out", criterion4},
      {"third-term vanishing", criterion5},
      {"conservation", criterion6},
      {"operator oracles", criterion7},
      {"divergence under bad prior", criterion8},
      {"integrator orders", criterion9},
  };
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

  bool all = true;
  for (int i : selected) {
    if (i < 1 || i > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "no criterion %d\n", i);
      return 1;
    }
    Verdict v;
    try {
      v = criteria[static_cast<std::size_t>(i - 1)].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.pass;
    std::printf("criterion %d %s  %s: %s\n", i, v.pass ? "PASS" : "FAIL", criteria[static_cast<std::size_t>(i - 1)].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
