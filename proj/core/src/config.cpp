#include "ifd/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ifd/errors.hpp"

namespace ifd {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  if (text.empty()) throw ConfigError(key, "expected a number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
    throw ConfigError(key, "'" + text + "' is not a finite number");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  if (text.empty()) throw ConfigError(key, "expected an integer");
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || errno == ERANGE || v < -2147483647L || v > 2147483647L)
    throw ConfigError(key, "'" + text + "' is not an integer");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "'" + text + "' is not a boolean");
}

std::optional<double> parse_auto_double(const std::string& key, const std::string& text) {
  if (text == "auto") return std::nullopt;
  return parse_double(key, text);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

std::vector<double> read_table(const std::string& key, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(key, "cannot open table '" + path + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      for (auto& c : w)
        if (c == ',') c = ' ';
      std::istringstream parts(w);
      std::string p;
      while (parts >> p) out.push_back(parse_double(key, p));
    }
  }
  if (out.empty()) throw ConfigError(key, "table '" + path + "' holds no samples");
  return out;
}

InitialCondition parse_ic(const std::string& key, const std::string& name) {
  if (name == "paper_gaussian" || name == "paper_gaussian_literal")
    return InitialCondition::paper_gaussian_literal;
  if (name == "paper_gaussian_alt") return InitialCondition::paper_gaussian_alt;
  if (name == "cosine") return InitialCondition::cosine;
  if (name == "table") return InitialCondition::table;
  throw ConfigError(key, "unknown initial condition '" + name + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* to_string(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::box_ifd: return "box_ifd";
    case SchemeKind::fourier_ifd: return "fourier_ifd";
    case SchemeKind::fd: return "fd";
  }
  return "?";
}

const char* to_string(InitialCondition ic) {
  switch (ic) {
    case InitialCondition::paper_gaussian_literal: return "paper_gaussian_literal";
    case InitialCondition::paper_gaussian_alt: return "paper_gaussian_alt";
    case InitialCondition::cosine: return "cosine";
    case InitialCondition::table: return "table";
  }
  return "?";
}

SchemeKind parse_scheme(const std::string& name) {
  if (name == "box_ifd") return SchemeKind::box_ifd;
  if (name == "fourier_ifd") return SchemeKind::fourier_ifd;
  if (name == "fd") return SchemeKind::fd;
  throw ConfigError("scheme", "unknown scheme '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("domain.length", "must be > 0");
  if (n_cells < 4) throw ConfigError("domain.n_cells", "must be >= 4");
  if (fine_factor < 4) throw ConfigError("domain.fine_factor", "must be >= 4");
  if (kernel_components.empty()) throw ConfigError("kernel.components", "at least one component");
  for (const auto& c : kernel_components) {
    if (!(c.amplitude > 0.0) || !std::isfinite(c.amplitude))
      throw ConfigError("kernel.components", "amplitudes must be > 0");
    if (!(c.width > 0.0) || !std::isfinite(c.width))
      throw ConfigError("kernel.components", "widths must be > 0");
  }
  if (kernel_images < 0) throw ConfigError("kernel.images", "must be >= 0 or auto");
  if (!(trunc_tol > 0.0) || trunc_tol >= 1.0) throw ConfigError("kernel.trunc_tol", "must be in (0, 1)");
  if (!(eta >= 0.0)) throw ConfigError("params.eta", "must be >= 0");
  if (noise_diag) {
    if (scheme != SchemeKind::box_ifd)
      throw ConfigError("params.noise_diag", "only supported by the box_ifd scheme");
    if (noise_diag->size() != 1 && noise_diag->size() != static_cast<std::size_t>(n_cells))
      throw ConfigError("params.noise_diag", "needs 1 or n_cells entries");
    for (double v : *noise_diag)
      if (!(v >= 0.0)) throw ConfigError("params.noise_diag", "entries must be >= 0");
  }
  if (dt && !(*dt > 0.0)) throw ConfigError("integrator.dt", "must be > 0");
  if (t_end && !(*t_end > 0.0)) throw ConfigError("integrator.t_end", "must be > 0");
  if (dt && t_end && *dt > *t_end) throw ConfigError("integrator.dt", "must not exceed t_end");
  if (blowup_norm && !(*blowup_norm > 0.0)) throw ConfigError("integrator.blowup_norm", "must be > 0");
  if (record_every < 0) throw ConfigError("integrator.record_every", "must be >= 0");
  if (initial_condition == InitialCondition::table) {
    const std::size_t expected = static_cast<std::size_t>(n_cells) * static_cast<std::size_t>(fine_factor);
    if (table_samples.size() != expected)
      throw ConfigError("initial_condition.table", "needs " + std::to_string(expected) +
                                                       " samples (n_cells * fine_factor), got " +
                                                       std::to_string(table_samples.size()));
  }
  if (reference_factor < 2) throw ConfigError("reference.factor", "must be >= 2");
}

ExperimentConfig parse_config(std::string_view text, const std::string& base_dir) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    if (!entries.emplace(key, std::make_pair(value, line_no)).second)
      throw ConfigError(key, "given more than once");
  }

  ExperimentConfig c;
  std::optional<double> sigma, amplitude;
  bool have_components = false;
  std::optional<std::string> table_path;

  for (const auto& [key, entry] : entries) {
    const std::string& v = entry.first;
    if (key == "domain.length") c.length = parse_double(key, v);
    else if (key == "domain.n_cells") c.n_cells = parse_int(key, v);
    else if (key == "domain.fine_factor") c.fine_factor = parse_int(key, v);
    else if (key == "kernel.sigma") sigma = parse_double(key, v);
    else if (key == "kernel.amplitude") amplitude = parse_double(key, v);
    else if (key == "kernel.components") {
      c.kernel_components.clear();
      for (const auto& item : split(v, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw ConfigError(key, "components are written amplitude:sigma");
        c.kernel_components.push_back({parse_double(key, trim(item.substr(0, colon))),
                                       parse_double(key, trim(item.substr(colon + 1)))});
      }
      have_components = true;
    } else if (key == "kernel.images") c.kernel_images = v == "auto" ? 0 : parse_int(key, v);
    else if (key == "kernel.trunc_tol") c.trunc_tol = parse_double(key, v);
    else if (key == "scheme") c.scheme = parse_scheme(v);
    else if (key == "params.eta") c.eta = parse_double(key, v);
    else if (key == "params.noise_diag") {
      if (v != "none") c.noise_diag = parse_list(key, v);
    } else if (key == "integrator.method") {
      try {
        c.method = parse_method(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
      }
    } else if (key == "integrator.dt") c.dt = parse_auto_double(key, v);
    else if (key == "integrator.t_end") c.t_end = parse_auto_double(key, v);
    else if (key == "integrator.blowup_norm") c.blowup_norm = parse_auto_double(key, v);
    else if (key == "integrator.record_every") c.record_every = parse_int(key, v);
    else if (key == "initial_condition") c.initial_condition = parse_ic(key, v);
    else if (key == "initial_condition.table") table_path = v;
    else if (key == "outputs.csv") c.csv_path = v;
    else if (key == "outputs.compare") c.compare_reference = parse_bool(key, v);
    else if (key == "reference.factor") c.reference_factor = parse_int(key, v);
    else throw ConfigError(key, "unknown key");
  }

  if (have_components && (sigma || amplitude))
    throw ConfigError("kernel.components", "give either kernel.components or kernel.sigma");
  if (sigma || amplitude) c.kernel_components = {{amplitude.value_or(1.0), sigma.value_or(0.5)}};

  if (table_path) {
    if (c.initial_condition != InitialCondition::table)
      throw ConfigError("initial_condition.table", "requires initial_condition = table");
    std::filesystem::path p(*table_path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    c.table_path = *table_path;
    c.table_samples = read_table("initial_condition.table", p.string());
  } else if (c.initial_condition == InitialCondition::table) {
    throw ConfigError("initial_condition.table", "missing sample file");
  }
  if (!c.csv_path.empty()) {
    std::filesystem::path p(c.csv_path);
    if (p.is_relative()) c.csv_path = (std::filesystem::path(base_dir) / p).string();
  }

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(text.str(), dir.empty() ? std::string(".") : dir.string());
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("auto"); };
  out.emplace_back("domain.length", format_double(c.length));
  out.emplace_back("domain.n_cells", std::to_string(c.n_cells));
  out.emplace_back("domain.fine_factor", std::to_string(c.fine_factor));
  std::string comps;
  for (std::size_t i = 0; i < c.kernel_components.size(); ++i) {
    if (i) comps += ",";
    comps += format_double(c.kernel_components[i].amplitude) + ":" +
             format_double(c.kernel_components[i].width);
  }
  out.emplace_back("kernel.components", comps);
  out.emplace_back("kernel.images", c.kernel_images > 0 ? std::to_string(c.kernel_images) : "auto");
  out.emplace_back("kernel.trunc_tol", format_double(c.trunc_tol));
  out.emplace_back("scheme", to_string(c.scheme));
  out.emplace_back("params.eta", format_double(c.eta));
  if (c.noise_diag) {
    std::string s;
    for (std::size_t i = 0; i < c.noise_diag->size(); ++i) {
      if (i) s += ",";
      s += format_double((*c.noise_diag)[i]);
    }
    out.emplace_back("params.noise_diag", s);
  } else {
    out.emplace_back("params.noise_diag", "none");
  }
  out.emplace_back("integrator.method", to_string(c.method));
  out.emplace_back("integrator.dt", opt(c.dt));
  out.emplace_back("integrator.t_end", opt(c.t_end));
  out.emplace_back("integrator.blowup_norm", opt(c.blowup_norm));
  out.emplace_back("integrator.record_every", std::to_string(c.record_every));
  out.emplace_back("initial_condition", to_string(c.initial_condition));
  if (c.initial_condition == InitialCondition::table)
    out.emplace_back("initial_condition.table", c.table_path);
  out.emplace_back("outputs.compare", c.compare_reference ? "true" : "false");
  out.emplace_back("reference.factor", std::to_string(c.reference_factor));
  return out;
}

std::string format_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [k, v] : config_entries(config)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace ifd
