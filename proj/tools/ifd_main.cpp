// Command-line front end: run, compare, converge, check.
// Exit status: 0 completed, 2 diverged, 1 error.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "ifd/config.hpp"
#include "ifd/errors.hpp"
#include "ifd/harness.hpp"
#include "ifd/selfcheck.hpp"

namespace {

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ifd::ConfigError("n_list", "'" + item + "' is not an integer");
    out.push_back(n);
  }
  return out;
}

int print_rows(const std::vector<ifd::ComparisonRow>& rows) {
  std::printf("%-16s %-10s %12s %24s %24s %24s\n", "run", "status", "time", "l2", "linf",
              "mass_drift");
  bool diverged = false;
  for (const auto& r : rows) {
    diverged = diverged || r.status.diverged;
    std::printf("%-16s %-10s %12.6g %24.17g %24.17g %24.17g\n", r.label.c_str(),
                r.status.diverged ? "diverged" : "completed", r.status.time, r.error.l2,
                r.error.linf, r.error.mass_drift);
  }
  return diverged ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information field dynamics for the periodic Burgers equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string table_out;
  std::string n_text;
  bool sequential = false;

  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  run_cmd->add_option("config", config_path, "Config file")->required();

  auto* compare_cmd = app.add_subcommand("compare", "Box IFD and FD against a refined FD reference");
  compare_cmd->add_option("config", config_path, "Config file")->required();
  compare_cmd->add_option("--n", n_text, "Extra resolutions, comma separated");
  compare_cmd->add_option("--table", table_out, "Write the table as CSV");
  compare_cmd->add_flag("--sequential", sequential, "Run one job at a time");

  auto* converge_cmd = app.add_subcommand("converge", "Error against resolution");
  converge_cmd->add_option("config", config_path, "Config file")->required();
  converge_cmd->add_option("--n", n_text, "Resolutions, comma separated")->required();
  converge_cmd->add_option("--table", table_out, "Write the table as CSV");
  converge_cmd->add_flag("--sequential", sequential, "Run one job at a time");

  auto* check_cmd = app.add_subcommand("check", "Operator and oracle self-tests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      const auto config = ifd::load_config(config_path);
      const auto result = ifd::run(config);
      std::printf("status      %s at t = %.17g (%s)\n",
                  result.status.diverged ? "diverged" : "completed", result.status.time,
                  result.status.reason.c_str());
      if (!result.reconstruction_error.empty())
        std::printf("reconstruct %s\n", result.reconstruction_error.c_str());
      std::printf("dt          %.17g over %ld steps\n", result.dt_used, result.steps_taken);
      std::printf("mass drift  %.17g\n", result.mass_drift);
      if (result.error)
        std::printf("error       l2 %.17g  linf %.17g\n", result.error->l2, result.error->linf);
      if (!result.config.csv_path.empty())
        std::printf("csv         %s\n", result.config.csv_path.c_str());
      std::printf("wall time   %.3f s\n", result.wall_seconds);
      return result.status.diverged ? 2 : 0;
    }
    if (compare_cmd->parsed() || converge_cmd->parsed()) {
      const auto config = ifd::load_config(config_path);
      const auto ns = parse_n_list(n_text);
      const auto rows = compare_cmd->parsed()
                            ? ifd::compare_schemes(config, ns, !sequential)
                            : ifd::convergence_study(config, ns, !sequential);
      if (!table_out.empty()) ifd::write_table_csv(rows, ifd::resolve_defaults(config), table_out);
      return print_rows(rows);
    }
    if (check_cmd->parsed()) {
      bool ok = true;
      for (const auto& c : ifd::run_self_checks()) {
        ok = ok && c.passed;
        std::printf("%s  %-48s %.3e (< %.1e)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.value, c.threshold);
      }
      return ok ? 0 : 1;
    }
  } catch (const ifd::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
