#pragma once

// Configuration-driven runs: compute curves, validate agreement between the
// methods, plot CSV files.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "angelesco/system.hpp"

namespace angelesco {

struct Tolerances {
  double ode_surface = 1e-4;
  double dis_surface = 2e-2;
  double dis_ode = 2e-2;
  double identity_surface = 1e-8;
  double identity_ode = 1e-6;
  double identity_dis = 2e-2;
  double ode_residual = 1e-3;
  double residual_halving = 3.0;  // minimum residual reduction when h is halved
  double lattice_residual = 1e-6;
  double endpoints = 1e-5;
  double exclude_margin = 0.05;
};

struct RunConfig {
  AngelescoSystem system;
  std::size_t grid_points = 181;
  int lattice_level = 1500;
  std::vector<int> snapshot_levels;  // empty: {lattice_level / 2}
  bool richardson = false;
  int ode_steps = 10000;
  double eps_start = 1e-6;
  double residual_step = 1e-3;
  std::size_t residual_grid_points = 2001;
  std::vector<Method> methods{Method::dis, Method::ode, Method::surface};
  Tolerances tol;
  std::string output_dir = "out";
};

// `key = value` setter shared by config files and command-line overrides.
// Throws InputError for unknown keys or malformed values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// Plain UTF-8 `key = value` lines, `#` comments, comma-separated arrays.
RunConfig parse_config(std::istream& is, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Checks cross-field invariants; throws InputError.
void validate(const RunConfig& cfg);

std::vector<Method> parse_methods(std::string_view list);

struct RunResult {
  std::vector<std::string> files;
  std::vector<std::string> failures;  // validate only: names of failing checks
  bool passed = true;
};

// One CSV per method plus run.json in output_dir. Throws InputError or
// NumericalFailure.
RunResult run_compute(const RunConfig& cfg);

// All three methods, comparisons, identity and residual checks;
// writes validate.json.
RunResult run_validate(const RunConfig& cfg);

RunResult run_plot(const std::vector<std::string>& csv_paths, const std::string& out_path,
                   const std::vector<std::string>& labels = {}, const std::string& title = "");

}  // namespace angelesco
