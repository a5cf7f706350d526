#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "walab/core.hpp"

namespace walab {

// Flat "key = value" sections; '#' starts a comment. Every field is validated
// at load time, before any computation. The seed is mandatory: random suites
// must be reproducible from the file alone.
struct ExperimentConfig {
  std::string name = "verify";
  std::uint64_t seed = 0;
  bool seed_set = false;

  int dim = 1;
  int points = 1024;
  double half_width = 20.0 * M_PI;

  std::string potential = "zero";
  std::array<double, 2> stark_field{1.0, 0.0};

  double window_time = 0.0;

  double horizon = 0.5;
  int time_samples = 65;

  std::vector<double> r_list{8.0, 12.0, 20.0};

  double disp_tmin = 0.01;
  double disp_tmax = 0.2;
  int disp_samples = 12;
  double disp_sigma0 = 0.01;
  double disp_half_width = 64.0;
  int disp_points = 16384;
  double disp_tail_tol = 0.05;

  double duh_t = 0.2;
  int duh_nodes = 32;
  bool duh_refine = false;

  int suite_size = 20;

  double tail_tol = kDefaultTailTol;
  double band_tol = 1e-10;

  std::map<std::string, std::map<std::string, std::string>> raw;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace walab
