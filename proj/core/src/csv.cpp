#include "ifd/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ifd/errors.hpp"

namespace ifd {

void emit_csv(const RunResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");

  std::vector<std::pair<std::string, std::string>> meta = config_entries(result.config);
  meta.emplace_back("run.status", result.status.diverged ? "diverged" : "completed");
  meta.emplace_back("run.status_time", format_double(result.status.time));
  meta.emplace_back("run.status_reason", result.status.reason);
  meta.emplace_back("run.dt_effective", format_double(result.dt_used));
  meta.emplace_back("run.steps", std::to_string(result.steps_taken));
  meta.emplace_back("run.blowup_norm", format_double(result.blowup_norm));
  if (result.config.scheme == SchemeKind::box_ifd) {
    meta.emplace_back("run.kernel_images", std::to_string(result.kernel_images));
    meta.emplace_back("run.band_half_width", std::to_string(result.band_half_width));
  }
  if (!result.reconstruction_error.empty())
    meta.emplace_back("run.reconstruction_error", result.reconstruction_error);
  meta.emplace_back("run.initial_mass", format_double(result.initial_mass));
  meta.emplace_back("run.final_mass", format_double(result.final_mass));
  meta.emplace_back("run.mass_drift", format_double(result.mass_drift));
  if (result.error) {
    meta.emplace_back("run.error_l2", format_double(result.error->l2));
    meta.emplace_back("run.error_linf", format_double(result.error->linf));
    meta.emplace_back("run.error_mass_drift", format_double(result.error->mass_drift));
  }
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << '\n';

  out << 'x';
  for (double t : result.times) out << ",t=" << format_double(t);
  out << '\n';
  const std::size_t rows = result.fields.empty() ? 0 : result.fields.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    out << format_double(result.fields.front().position(i));
    for (const auto& f : result.fields) out << ',' << format_double(f[i]);
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos) continue;
      table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (table.header.empty()) {
      table.header = cells;
      table.columns.resize(cells.size());
      continue;
    }
    if (cells.size() != table.header.size()) throw IoError("ragged row in '" + path + "'");
    for (std::size_t j = 0; j < cells.size(); ++j) {
      char* end = nullptr;
      const double v = std::strtod(cells[j].c_str(), &end);
      if (end != cells[j].c_str() + cells[j].size())
        throw IoError("malformed number '" + cells[j] + "' in '" + path + "'");
      table.columns[j].push_back(v);
    }
  }
  if (table.header.empty()) throw IoError("no header row in '" + path + "'");
  return table;
}

}  // namespace ifd
