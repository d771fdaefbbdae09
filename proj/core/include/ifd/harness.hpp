#pragma once

// Experiment orchestration: a single run (project, integrate, reconstruct,
// compare), scheme comparisons against a refined finite-difference
// reference, and resolution studies.

#include <optional>
#include <string>
#include <vector>

#include "ifd/config.hpp"
#include "ifd/domain.hpp"
#include "ifd/integrator.hpp"
#include "ifd/reconstruct.hpp"

namespace ifd {

struct RunResult {
  ExperimentConfig config;  ///< with dt and t_end resolved
  RunStatus status;
  double dt_used = 0.0;  ///< effective uniform step
  long steps_taken = 0;
  double blowup_norm = 0.0;
  int kernel_images = 0;      ///< periodic images used (box scheme)
  int band_half_width = 0;    ///< operator band (box scheme)
  std::vector<double> times;          ///< recorded times, final time last
  std::vector<FineField> fields;      ///< reconstruction per recorded time
  /// Set when a state could not be reconstructed; `times` and `fields` then
  /// stop before that state and may be empty.
  std::string reconstruction_error;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  double mass_drift = 0.0;            ///< |final - initial| / max(|initial|, int |s0|)
  std::optional<ErrorReport> error;   ///< vs reference, when requested and completed
  double wall_seconds = 0.0;

  /// Last reconstructed field; throws std::logic_error when there is none.
  const FineField& final_field() const;
};

/// Initial field sampled on the fine grid of `config`.
FineField initial_field(const ExperimentConfig& config);

/// 0.5 x min(2/(eta k^2), 2 sqrt(2)/(u_max k)) with k = pi n_cells / L.
double default_dt(const ExperimentConfig& config);

/// Earliest time at which the finite-difference solution at
/// reference_factor x n_cells has a maximum gradient above 3x its initial
/// value. Throws ConfigError when that does not happen before `t_cap`.
double steepening_time(const ExperimentConfig& config, double t_cap = 1000.0);

/// Copy with dt and t_end filled in by the defaults above when absent.
ExperimentConfig resolve_defaults(const ExperimentConfig& config);

/// Finite-difference solution at `n_points` nodes at the config's t_end.
/// Throws NumericalError when the reference itself diverges.
FineField reference_solution(const ExperimentConfig& config, int n_points);

/// Runs the pipeline; writes the CSV when outputs.csv is set. With
/// outputs.compare the final field is compared against the reference.
RunResult run(const ExperimentConfig& config);
/// As above against a precomputed reference field.
RunResult run(const ExperimentConfig& config, const FineField& reference);

struct ComparisonRow {
  std::string label;  ///< e.g. "box_ifd@64"
  SchemeKind scheme = SchemeKind::box_ifd;
  int n_cells = 0;
  RunStatus status;
  ErrorReport error;
};

/// Box IFD and FD at the base resolution and at each of `extra_n`, all
/// against one FD reference at reference_factor x the largest resolution.
std::vector<ComparisonRow> compare_schemes(const ExperimentConfig& base,
                                           const std::vector<int>& extra_n = {},
                                           bool concurrent = true);

/// The base scheme at each resolution in `n_list` (non-decreasing) against
/// one FD reference at reference_factor x max(n_list).
std::vector<ComparisonRow> convergence_study(const ExperimentConfig& base,
                                             const std::vector<int>& n_list,
                                             bool concurrent = true);

/// Rows as CSV: label,scheme,n_cells,status,time,l2,linf,mass_drift.
void write_table_csv(const std::vector<ComparisonRow>& rows, const ExperimentConfig& base,
                     const std::string& path);

}  // namespace ifd
