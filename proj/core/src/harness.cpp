#include "ifd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>

#include "ifd/csv.hpp"
#include "ifd/errors.hpp"
#include "ifd/prior.hpp"

namespace ifd {

namespace {

double ic_value(const ExperimentConfig& c, double x) {
  const double u = x / c.length - 0.5;
  switch (c.initial_condition) {
    case InitialCondition::paper_gaussian_literal: return std::exp(4.0 - u * u);
    case InitialCondition::paper_gaussian_alt: return std::exp(-4.0 * u * u);
    case InitialCondition::cosine: return std::cos(2.0 * std::numbers::pi * x / c.length);
    case InitialCondition::table: break;
  }
  throw std::logic_error("ic_value: tabulated initial condition has no formula");
}

/// Initial field at `n` equispaced points.
FineField initial_samples(const ExperimentConfig& c, std::size_t n) {
  if (c.initial_condition == InitialCondition::table) {
    FineField table(c.length, c.table_samples);
    if (n == table.size()) return table;
    if (table.size() % n != 0)
      throw GridMismatch("tabulated initial condition does not restrict to " + std::to_string(n) +
                         " points");
    return FineField(c.length, std::vector<double>(sample_to_grid(table, n).values().begin(),
                                                   sample_to_grid(table, n).values().end()));
  }
  return FineField::sample(c.length, n, [&](double x) { return ic_value(c, x); });
}

double max_abs(const FineField& f) {
  double m = 0.0;
  for (double v : f.samples()) m = std::max(m, std::abs(v));
  return m;
}

double max_gradient(std::span<const double> u, double dx) {
  const std::size_t n = u.size();
  double g = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    g = std::max(g, std::abs(u[(i + 1) % n] - u[(i + n - 1) % n]) / (2.0 * dx));
  return g;
}

double dt_bound(double length, int n, double eta, double u_max) {
  const double k = std::numbers::pi * static_cast<double>(n) / length;
  double bound = std::numeric_limits<double>::infinity();
  if (eta > 0.0) bound = std::min(bound, 2.0 / (eta * k * k));
  if (u_max > 0.0) bound = std::min(bound, 2.0 * std::numbers::sqrt2 / (u_max * k));
  if (!std::isfinite(bound)) bound = 1.0;
  return 0.5 * bound;
}

BurgersParams params_of(const ExperimentConfig& c) {
  BurgersParams p;
  p.eta = c.eta;
  if (c.noise_diag) {
    if (c.noise_diag->size() == 1)
      p.noise_diag = std::vector<double>(static_cast<std::size_t>(c.n_cells), c.noise_diag->front());
    else
      p.noise_diag = c.noise_diag;
  }
  return p;
}

ExperimentConfig with_cells(const ExperimentConfig& c, int n) {
  ExperimentConfig out = c;
  out.n_cells = n;
  if (n != c.n_cells) {
    out.dt.reset();  // stability bound depends on the resolution
    if (out.noise_diag && out.noise_diag->size() != 1) out.noise_diag.reset();
  }
  return out;
}

}  // namespace

FineField initial_field(const ExperimentConfig& config) {
  return initial_samples(config, static_cast<std::size_t>(config.n_cells) *
                                     static_cast<std::size_t>(config.fine_factor));
}

double default_dt(const ExperimentConfig& config) {
  return dt_bound(config.length, config.n_cells, config.eta, max_abs(initial_field(config)));
}

double steepening_time(const ExperimentConfig& config, double t_cap) {
  const int n = config.n_cells * config.reference_factor;
  const FineField ic = initial_samples(config, static_cast<std::size_t>(n));
  const double dx = config.length / n;
  const double dt = dt_bound(config.length, n, config.eta, max_abs(ic));
  BurgersParams params;
  params.eta = config.eta;
  const RhsFunction rhs = [&](const DataVector& u) { return fd_rhs(u, dx, params); };

  DataVector u = DataVector::samples(config.length, {ic.samples().begin(), ic.samples().end()});
  const double g0 = max_gradient(u.values(), dx);
  if (!(g0 > 0.0))
    throw ConfigError("integrator.t_end", "auto needs a non-constant initial condition");
  const long max_steps = static_cast<long>(std::ceil(t_cap / dt));
  for (long step = 1; step <= max_steps; ++step) {
    u = step_rk4(rhs, u, dt);
    if (!u.all_finite())
      throw ConfigError("integrator.t_end", "auto: reference diverged before steepening");
    if (max_gradient(u.values(), dx) > 3.0 * g0) return static_cast<double>(step) * dt;
  }
  throw ConfigError("integrator.t_end", "auto: no steepening before t = " + format_double(t_cap) +
                                            "; give t_end explicitly");
}

ExperimentConfig resolve_defaults(const ExperimentConfig& config) {
  config.validate();
  ExperimentConfig c = config;
  if (!c.t_end) c.t_end = steepening_time(c);
  if (!c.dt) c.dt = std::min(default_dt(c), *c.t_end);
  return c;
}

FineField reference_solution(const ExperimentConfig& config, int n_points) {
  ExperimentConfig c = resolve_defaults(config);
  const FineField ic = initial_samples(c, static_cast<std::size_t>(n_points));
  const double dx = c.length / n_points;
  IntegratorConfig ic_cfg;
  ic_cfg.method = Method::rk4;
  ic_cfg.t_end = *c.t_end;
  ic_cfg.dt = std::min(dt_bound(c.length, n_points, c.eta, max_abs(ic)), *c.t_end);
  ic_cfg.record_every = std::numeric_limits<int>::max();
  BurgersParams params;
  params.eta = c.eta;
  const auto traj = integrate([&](const DataVector& u) { return fd_rhs(u, dx, params); },
                              DataVector::samples(c.length, {ic.samples().begin(), ic.samples().end()}), ic_cfg);
  if (traj.status.diverged)
    throw NumericalError("reference solution diverged at t = " + format_double(traj.status.time) +
                         ": " + traj.status.reason);
  return FineField(c.length, std::vector<double>(traj.final_state.values().begin(),
                                                 traj.final_state.values().end()));
}

namespace {

RunResult run_impl(const ExperimentConfig& config, const FineField* reference) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.config = resolve_defaults(config);
  const ExperimentConfig& c = result.config;

  const PeriodicDomain domain(c.length, c.n_cells, c.fine_factor);
  const FineField ic = initial_field(c);
  const BurgersParams params = params_of(c);
  params.validate();

  std::optional<PrecomputedOperators> ops;
  DataVector d0;
  RhsFunction rhs;
  std::function<FineField(const DataVector&)> reconstruct;
  const std::size_t fine = domain.fine_size();

  switch (c.scheme) {
    case SchemeKind::box_ifd: {
      const CorrelationKernel kernel(c.length, c.kernel_components, c.kernel_images);
      ops.emplace(assemble_operators(kernel, domain, c.trunc_tol));
      d0 = project_to_data(ic, domain);
      result.kernel_images = kernel.images();
      result.band_half_width = ops->band_half_width();
      const PrecomputedOperators* o = &*ops;
      if (params.noise_diag)
        rhs = [o, params](const DataVector& d) { return noise_lift(box_ifd_rhs(d, *o, params), *o, params); };
      else
        rhs = [o, params](const DataVector& d) { return box_ifd_rhs(d, *o, params); };
      reconstruct = [o, fine](const DataVector& d) { return wiener_reconstruct(d, *o, fine); };
      break;
    }
    case SchemeKind::fourier_ifd:
      d0 = project_to_fourier(ic, c.n_cells);
      rhs = [params](const DataVector& d) { return fourier_ifd_rhs(d, params); };
      reconstruct = [fine](const DataVector& d) { return fourier_reconstruct(d, fine); };
      break;
    case SchemeKind::fd: {
      d0 = sample_to_grid(ic, static_cast<std::size_t>(c.n_cells));
      const double dx = domain.cell_width();
      rhs = [dx, params](const DataVector& u) { return fd_rhs(u, dx, params); };
      reconstruct = [](const DataVector& u) {
        return FineField(u.length(), std::vector<double>(u.values().begin(), u.values().end()));
      };
      break;
    }
  }

  IntegratorConfig icfg;
  icfg.method = c.method;
  icfg.dt = *c.dt;
  icfg.t_end = *c.t_end;
  icfg.blowup_norm = c.blowup_norm;
  icfg.record_every = c.record_every > 0 ? c.record_every : std::numeric_limits<int>::max();
  const Trajectory traj = integrate(rhs, d0, icfg);

  result.status = traj.status;
  result.dt_used = icfg.effective_dt();
  result.steps_taken = traj.steps_taken;
  result.blowup_norm = traj.blowup_norm;
  std::vector<double> times = traj.times;
  std::vector<const DataVector*> states;
  for (const auto& s : traj.states) states.push_back(&s);
  if (times.back() != traj.final_time) {
    times.push_back(traj.final_time);
    states.push_back(&traj.final_state);
  }
  // A Gram matrix too ill-conditioned to solve makes the Wiener mean
  // undefined; keep the states that could be reconstructed.
  for (std::size_t k = 0; k < states.size(); ++k) {
    try {
      result.fields.push_back(reconstruct(*states[k]));
      result.times.push_back(times[k]);
    } catch (const NumericalError& e) {
      result.reconstruction_error = e.what();
      break;
    }
  }
  result.initial_mass = d0.total();
  result.final_mass = traj.final_state.total();
  double abs_mass = 0.0;
  for (double v : ic.samples()) abs_mass += std::abs(v);
  const double scale = std::max(std::abs(result.initial_mass), abs_mass * ic.spacing());
  result.mass_drift = std::abs(result.final_mass - result.initial_mass) / (scale > 0.0 ? scale : 1.0);

  if (!traj.status.diverged && result.reconstruction_error.empty() &&
      (reference != nullptr || c.compare_reference)) {
    std::optional<FineField> own_ref;
    if (reference == nullptr) {
      own_ref.emplace(reference_solution(c, c.n_cells * c.reference_factor));
      reference = &*own_ref;
    }
    const FineField& m = result.final_field();
    const FineField nodes =
        m.size() == static_cast<std::size_t>(c.n_cells)
            ? m
            : FineField(c.length, [&] {
                const auto s = sample_to_grid(m, static_cast<std::size_t>(c.n_cells));
                return std::vector<double>(s.values().begin(), s.values().end());
              }());
    result.error = compare(nodes, *reference);
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!c.csv_path.empty()) emit_csv(result, c.csv_path);
  return result;
}

std::vector<ComparisonRow> run_rows(const std::vector<ExperimentConfig>& configs,
                                    const FineField& reference, bool concurrent) {
  auto one = [&reference](const ExperimentConfig& cfg) {
    const RunResult r = run_impl(cfg, &reference);
    ComparisonRow row;
    row.scheme = cfg.scheme;
    row.n_cells = cfg.n_cells;
    row.label = std::string(to_string(cfg.scheme)) + "@" + std::to_string(cfg.n_cells);
    row.status = r.status;
    if (r.error) row.error = *r.error;
    else row.error = {std::nan(""), std::nan(""), std::nan("")};
    return row;
  };
  std::vector<ComparisonRow> rows;
  if (concurrent) {
    std::vector<std::future<ComparisonRow>> jobs;
    for (const auto& cfg : configs) jobs.push_back(std::async(std::launch::async, one, cfg));
    for (auto& j : jobs) rows.push_back(j.get());
  } else {
    for (const auto& cfg : configs) rows.push_back(one(cfg));
  }
  return rows;
}

}  // namespace

const FineField& RunResult::final_field() const {
  if (fields.empty()) throw std::logic_error("run result holds no reconstructed field");
  return fields.back();
}

RunResult run(const ExperimentConfig& config) { return run_impl(config, nullptr); }

RunResult run(const ExperimentConfig& config, const FineField& reference) {
  return run_impl(config, &reference);
}

std::vector<ComparisonRow> compare_schemes(const ExperimentConfig& base,
                                           const std::vector<int>& extra_n, bool concurrent) {
  ExperimentConfig b = base;
  b.t_end = resolve_defaults(base).t_end;
  b.csv_path.clear();
  std::vector<int> ns{b.n_cells};
  for (int n : extra_n)
    if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
  const int n_max = *std::max_element(ns.begin(), ns.end());
  for (int n : ns)
    if ((n_max * b.reference_factor) % n != 0)
      throw ConfigError("domain.n_cells", std::to_string(n) + " does not divide the reference grid");
  const FineField reference = reference_solution(b, n_max * b.reference_factor);

  std::vector<ExperimentConfig> configs;
  for (int n : ns) {
    ExperimentConfig ifd_cfg = with_cells(b, n);
    ifd_cfg.scheme = SchemeKind::box_ifd;
    ExperimentConfig fd_cfg = with_cells(b, n);
    fd_cfg.scheme = SchemeKind::fd;
    fd_cfg.noise_diag.reset();
    configs.push_back(ifd_cfg);
    configs.push_back(fd_cfg);
  }
  return run_rows(configs, reference, concurrent);
}

std::vector<ComparisonRow> convergence_study(const ExperimentConfig& base,
                                             const std::vector<int>& n_list, bool concurrent) {
  if (n_list.empty()) throw ConfigError("n_list", "needs at least one resolution");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] < n_list[i - 1]) throw ConfigError("n_list", "must be in ascending order");
  for (int n : n_list)
    if (n < 4) throw ConfigError("n_list", "resolutions must be >= 4");
  ExperimentConfig b = base;
  b.t_end = resolve_defaults(base).t_end;
  b.csv_path.clear();
  const int n_ref = n_list.back() * b.reference_factor;
  for (int n : n_list)
    if (n_ref % n != 0)
      throw ConfigError("n_list", std::to_string(n) + " does not divide the reference grid " +
                                      std::to_string(n_ref));
  const FineField reference = reference_solution(b, n_ref);
  std::vector<ExperimentConfig> configs;
  for (int n : n_list) configs.push_back(with_cells(b, n));
  return run_rows(configs, reference, concurrent);
}

void write_table_csv(const std::vector<ComparisonRow>& rows, const ExperimentConfig& base,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (const auto& [k, v] : config_entries(base)) out << "# " << k << " = " << v << "\n";
  out << "label,scheme,n_cells,status,time,l2,linf,mass_drift\n";
  for (const auto& r : rows)
    out << r.label << ',' << to_string(r.scheme) << ',' << r.n_cells << ','
        << (r.status.diverged ? "diverged" : "completed") << ',' << format_double(r.status.time)
        << ',' << format_double(r.error.l2) << ',' << format_double(r.error.linf) << ','
        << format_double(r.error.mass_drift) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace ifd
