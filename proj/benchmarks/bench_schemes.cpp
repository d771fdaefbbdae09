#include <benchmark/benchmark.h>

#include <cmath>

#include "ifd/reconstruct.hpp"
#include "ifd/schemes.hpp"

using namespace ifd;

namespace {

constexpr double kLength = 64.0;

double bump(double x) { return std::exp(4.0 - std::pow(x / kLength - 0.5, 2)); }

PeriodicDomain domain_for(const benchmark::State& state) {
  return PeriodicDomain(kLength, static_cast<int>(state.range(0)), 4);
}

void BM_AssembleOperators(benchmark::State& state) {
  const auto kernel = CorrelationKernel::gaussian(kLength, 0.5);
  const auto domain = domain_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_operators(kernel, domain));
}

void BM_SolveGram(benchmark::State& state) {
  const auto domain = domain_for(state);
  const auto ops = assemble_operators(CorrelationKernel::gaussian(kLength, 0.5), domain);
  const auto d = project_to_data(FineField::sample(domain, bump), domain);
  for (auto _ : state) benchmark::DoNotOptimize(ops.solve_gram(d.values()));
}

void BM_BoxIfdRhs(benchmark::State& state) {
  const auto domain = domain_for(state);
  const auto ops = assemble_operators(CorrelationKernel::gaussian(kLength, 0.5), domain);
  const auto d = project_to_data(FineField::sample(domain, bump), domain);
  const BurgersParams p{5.0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(box_ifd_rhs(d, ops, p));
}

void BM_FourierIfdRhs(benchmark::State& state) {
  const auto domain = domain_for(state);
  const auto d = project_to_fourier(FineField::sample(domain, bump), domain.n_cells());
  const BurgersParams p{5.0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(fourier_ifd_rhs(d, p));
}

void BM_FdRhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = FineField::sample(kLength, n, bump);
  const auto u = DataVector::samples(kLength, {s.samples().begin(), s.samples().end()});
  const BurgersParams p{5.0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(fd_rhs(u, s.spacing(), p));
}

}  // namespace

BENCHMARK(BM_AssembleOperators)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_SolveGram)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_BoxIfdRhs)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_FourierIfdRhs)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_FdRhs)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK_MAIN();
