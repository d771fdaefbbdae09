#pragma once

// Experiment configuration: flat UTF-8 key-value text with dotted keys,
//
//   # comment
//   domain.length = 64
//   kernel.sigma  = 0.5
//
// Unknown or repeated keys are rejected with a ConfigError naming the key.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifd/integrator.hpp"
#include "ifd/prior.hpp"

namespace ifd {

enum class SchemeKind { box_ifd, fourier_ifd, fd };

enum class InitialCondition {
  paper_gaussian_literal,  ///< exp(4 - (x/L - 1/2)^2)
  paper_gaussian_alt,      ///< exp(-4 (x/L - 1/2)^2)
  cosine,                  ///< cos(2 pi x / L)
  table,                   ///< samples on the fine grid read from a file
};

struct ExperimentConfig {
  double length = 64.0;
  int n_cells = 64;
  int fine_factor = 4;

  std::vector<GaussianComponent> kernel_components{{1.0, 0.5}};
  int kernel_images = 0;  ///< 0 = smallest valid
  double trunc_tol = 1e-12;

  SchemeKind scheme = SchemeKind::box_ifd;

  double eta = 5.0;
  std::optional<std::vector<double>> noise_diag;

  Method method = Method::rk4;
  std::optional<double> dt;     ///< absent = stability-derived default
  std::optional<double> t_end;  ///< absent = steepening time of the reference
  std::optional<double> blowup_norm;
  int record_every = 1;

  InitialCondition initial_condition = InitialCondition::paper_gaussian_literal;
  std::string table_path;
  std::vector<double> table_samples;

  std::string csv_path;
  bool compare_reference = false;
  int reference_factor = 4;

  void validate() const;
};

ExperimentConfig parse_config(std::string_view text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

/// Every setting as (key, value) in config-file syntax, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config);
std::string format_config(const ExperimentConfig& config);

const char* to_string(SchemeKind scheme);
const char* to_string(InitialCondition ic);
SchemeKind parse_scheme(const std::string& name);

/// Shortest decimal that reads back to the same double (17 significant digits).
std::string format_double(double v);

}  // namespace ifd
