#pragma once

// Fixed-step method-of-lines integration of dd/dt = rhs(d).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ifd/schemes.hpp"

namespace ifd {

using RhsFunction = std::function<DataVector(const DataVector&)>;

enum class Method { euler, rk4 };

struct IntegratorConfig {
  Method method = Method::rk4;
  double dt = 0.0;
  double t_end = 0.0;
  /// Max-norm above which the run is declared diverged; absent selects
  /// 1e6 times the initial max-norm (1e6 for a zero initial state).
  std::optional<double> blowup_norm;
  int record_every = 1;

  void validate() const;
  /// Number of uniform steps; dt is shortened so they end exactly at t_end.
  long steps() const;
  double effective_dt() const { return t_end / static_cast<double>(steps()); }
};

struct RunStatus {
  bool diverged = false;
  double time = 0.0;  ///< divergence time, or final time when completed
  std::string reason;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DataVector> states;
  RunStatus status;
  DataVector final_state;
  double final_time = 0.0;
  long steps_taken = 0;
  double blowup_norm = 0.0;
};

DataVector step_euler(const RhsFunction& rhs, const DataVector& d, double dt);
DataVector step_rk4(const RhsFunction& rhs, const DataVector& d, double dt);

/// Integrates to t_end, recording the initial state and every
/// `record_every`-th step. Stops with status diverged(t) when the state
/// exceeds the blow-up norm, turns non-finite, or the rhs reports a
/// NumericalError.
Trajectory integrate(const RhsFunction& rhs, const DataVector& d0, const IntegratorConfig& config);

const char* to_string(Method method);
Method parse_method(const std::string& name);

}  // namespace ifd
