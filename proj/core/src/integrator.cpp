#include "ifd/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ifd/errors.hpp"

namespace ifd {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be > 0");
  if (dt > t_end * (1.0 + 1e-12)) throw std::invalid_argument("dt must not exceed t_end");
  if (blowup_norm && !(*blowup_norm > 0.0)) throw std::invalid_argument("blowup_norm must be > 0");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

long IntegratorConfig::steps() const {
  return std::max(1L, static_cast<long>(std::ceil(t_end / dt * (1.0 - 1e-12))));
}

DataVector step_euler(const RhsFunction& rhs, const DataVector& d, double dt) {
  return d + dt * rhs(d);
}

DataVector step_rk4(const RhsFunction& rhs, const DataVector& d, double dt) {
  const DataVector k1 = rhs(d);
  const DataVector k2 = rhs(d + (0.5 * dt) * k1);
  const DataVector k3 = rhs(d + (0.5 * dt) * k2);
  const DataVector k4 = rhs(d + dt * k3);
  DataVector sum = k1;
  sum += 2.0 * k2;
  sum += 2.0 * k3;
  sum += k4;
  return d + (dt / 6.0) * std::move(sum);
}

Trajectory integrate(const RhsFunction& rhs, const DataVector& d0, const IntegratorConfig& config) {
  config.validate();
  const long steps = config.steps();
  const double dt = config.effective_dt();

  Trajectory traj;
  const double initial = d0.max_norm();
  traj.blowup_norm = config.blowup_norm.value_or(initial > 0.0 ? 1e6 * initial : 1e6);
  traj.times.push_back(0.0);
  traj.states.push_back(d0);

  DataVector state = d0;
  double t = 0.0;
  for (long step = 1; step <= steps; ++step) {
    const double t_next = step == steps ? config.t_end : static_cast<double>(step) * dt;
    DataVector next = state;
    try {
      next = config.method == Method::euler ? step_euler(rhs, state, dt) : step_rk4(rhs, state, dt);
    } catch (const NumericalError& e) {
      traj.status = {true, t_next, e.what()};
      break;
    }
    if (!next.all_finite()) {
      traj.status = {true, t_next, "non-finite state"};
      break;
    }
    if (next.max_norm() > traj.blowup_norm) {
      traj.status = {true, t_next, "max-norm exceeded blow-up threshold"};
      break;
    }
    state = std::move(next);
    t = t_next;
    traj.steps_taken = step;
    if (step % config.record_every == 0) {
      traj.times.push_back(t);
      traj.states.push_back(state);
    }
  }
  if (!traj.status.diverged) traj.status = {false, t, "completed"};
  traj.final_time = t;
  traj.final_state = std::move(state);
  return traj;
}

const char* to_string(Method method) { return method == Method::euler ? "euler" : "rk4"; }

Method parse_method(const std::string& name) {
  if (name == "euler") return Method::euler;
  if (name == "rk4") return Method::rk4;
  throw std::invalid_argument("unknown integration method '" + name + "'");
}

}  // namespace ifd
