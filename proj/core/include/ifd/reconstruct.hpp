#pragma once

#include <span>
#include <vector>

#include "ifd/domain.hpp"
#include "ifd/prior.hpp"
#include "ifd/schemes.hpp"

namespace ifd {

struct ErrorReport {
  double l2 = 0.0;          ///< sqrt(h sum (m - r)^2)
  double linf = 0.0;        ///< max |m - r|
  double mass_drift = 0.0;  ///< |int m - int r| / max(|int r|, int |r|)
};

/// No-noise Wiener mean m(x) = sum_j E_j(x) d'_j, d' = A^{-1} d, evaluated on
/// `n_samples` equispaced points of the period.
FineField wiener_reconstruct(const DataVector& d, const PrecomputedOperators& ops,
                             std::size_t n_samples);
/// Same at arbitrary positions.
std::vector<double> wiener_reconstruct_at(const DataVector& d, const PrecomputedOperators& ops,
                                          std::span<const double> positions);

/// Synthesis of a Fourier band on `n_samples` points.
FineField fourier_reconstruct(const DataVector& d, std::size_t n_samples);

/// Box integrals of `s` by composite Simpson per box (trapezoid when the
/// samples per box are odd). Needs at least 4 samples per box.
DataVector project_to_data(const FineField& s, const PeriodicDomain& domain);

/// Fourier band |j| <= (n_cells - 1) / 2 of `s`, the data of a Fourier
/// scheme with `n_cells` degrees of freedom.
DataVector project_to_fourier(const FineField& s, int n_cells);

/// Point samples of `s` at every stride-th grid point, `n_points` in total.
DataVector sample_to_grid(const FineField& s, std::size_t n_points);

/// Error of `m` against `reference`, evaluated at the nodes of `m`. A finer
/// reference is restricted to those nodes; throws GridMismatch when the
/// grids are not commensurate.
ErrorReport compare(const FineField& m, const FineField& reference);

}  // namespace ifd
