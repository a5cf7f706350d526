#include "walab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace walab {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& section, const std::string& key,
                 const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config [" + section + "] " + key + ": bad number '" + v + "'");
  }
}

long to_int(const std::string& section, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config [" + section + "] " + key + ": bad integer '" + v + "'");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      cfg.raw[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || section.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": key outside section");
    cfg.raw[section][key] = val;
  }

  for (const auto& [section, kv] : cfg.raw) {
    for (const auto& [key, val] : kv) {
      if (section == "experiment") {
        if (key == "name") cfg.name = val;
        else if (key == "seed") {
          cfg.seed = static_cast<std::uint64_t>(to_int(section, key, val));
          cfg.seed_set = true;
        } else
          throw ConfigError("config: unknown key [experiment] " + key);
      } else if (section == "grid") {
        if (key == "dim") cfg.dim = static_cast<int>(to_int(section, key, val));
        else if (key == "points") cfg.points = static_cast<int>(to_int(section, key, val));
        else if (key == "half_width") cfg.half_width = to_double(section, key, val);
        else
          throw ConfigError("config: unknown key [grid] " + key);
      } else if (section == "window") {
        if (key == "time") cfg.window_time = to_double(section, key, val);
        else
          throw ConfigError("config: unknown key [window] " + key);
      } else if (section == "potential") {
        if (key == "name") cfg.potential = val;
        else if (key == "stark_field") {
          std::istringstream fs(val);
          fs >> cfg.stark_field[0];
          if (!(fs >> cfg.stark_field[1])) cfg.stark_field[1] = 0.0;
        } else
          throw ConfigError("config: unknown key [potential] " + key);
      } else if (section == "time") {
        if (key == "horizon") cfg.horizon = to_double(section, key, val);
        else if (key == "samples")
          cfg.time_samples = static_cast<int>(to_int(section, key, val));
        else
          throw ConfigError("config: unknown key [time] " + key);
      } else if (section == "pairs") {
        if (key == "r_list") {
          cfg.r_list.clear();
          std::istringstream rs(val);
          double r;
          while (rs >> r) cfg.r_list.push_back(r);
          if (cfg.r_list.empty())
            throw ConfigError("config [pairs] r_list: no values");
        } else
          throw ConfigError("config: unknown key [pairs] " + key);
      } else if (section == "dispersive") {
        if (key == "t_min") cfg.disp_tmin = to_double(section, key, val);
        else if (key == "t_max") cfg.disp_tmax = to_double(section, key, val);
        else if (key == "samples")
          cfg.disp_samples = static_cast<int>(to_int(section, key, val));
        else if (key == "sigma0") cfg.disp_sigma0 = to_double(section, key, val);
        else if (key == "half_width") cfg.disp_half_width = to_double(section, key, val);
        else if (key == "points")
          cfg.disp_points = static_cast<int>(to_int(section, key, val));
        else if (key == "tail") cfg.disp_tail_tol = to_double(section, key, val);
        else
          throw ConfigError("config: unknown key [dispersive] " + key);
      } else if (section == "duhamel") {
        if (key == "t") cfg.duh_t = to_double(section, key, val);
        else if (key == "quad_nodes")
          cfg.duh_nodes = static_cast<int>(to_int(section, key, val));
        else if (key == "refine") cfg.duh_refine = to_int(section, key, val) != 0;
        else
          throw ConfigError("config: unknown key [duhamel] " + key);
      } else if (section == "lemmas") {
        if (key == "suite_size")
          cfg.suite_size = static_cast<int>(to_int(section, key, val));
        else
          throw ConfigError("config: unknown key [lemmas] " + key);
      } else if (section == "tolerances") {
        if (key == "tail") cfg.tail_tol = to_double(section, key, val);
        else if (key == "band") cfg.band_tol = to_double(section, key, val);
        else
          throw ConfigError("config: unknown key [tolerances] " + key);
      } else {
        throw ConfigError("config: unknown section [" + section + "]");
      }
    }
  }

  if (!cfg.seed_set) throw ConfigError("config: [experiment] seed is mandatory");
  if (cfg.dim != 1 && cfg.dim != 2) throw ConfigError("config: dim must be 1 or 2");
  if (cfg.points < 8 || cfg.points % 2 != 0)
    throw ConfigError("config: grid points must be even and >= 8");
  if (!(cfg.half_width > 0.0)) throw ConfigError("config: half_width must be > 0");
  if (!(cfg.horizon > 0.0)) throw ConfigError("config: time horizon must be > 0");
  if (cfg.time_samples < 2) throw ConfigError("config: time samples must be >= 2");
  if (!(cfg.disp_tmin > 0.0) || !(cfg.disp_tmax > cfg.disp_tmin))
    throw ConfigError("config: dispersive window must satisfy 0 < t_min < t_max");
  if (cfg.disp_samples < 4) throw ConfigError("config: dispersive samples must be >= 4");
  if (cfg.duh_nodes < 1) throw ConfigError("config: duhamel quad_nodes must be >= 1");
  if (cfg.suite_size < 1) throw ConfigError("config: lemmas suite_size must be >= 1");
  for (double r : cfg.r_list)
    if (!(r > 4.0) && !(cfg.dim > 1 && r == 4.0))
      throw ConfigError("config: pair r values must be > 4 (or = 4 for dim 2)");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace walab
