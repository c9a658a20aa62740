#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "angelesco/angelesco.h"

namespace {

constexpr std::array<const char*, 25> kKeys{
    "interval1",        "interval2",        "weight1",         "weight2",
    "grid_points",      "lattice_level",    "snapshot_levels", "richardson",
    "ode_steps",        "eps_start",        "residual_step",   "residual_grid_points",
    "methods",          "output_dir",       "tol_ode_surface", "tol_dis_surface",
    "tol_dis_ode",      "tol_identity_surface", "tol_identity_ode", "tol_identity_dis",
    "tol_ode_residual", "tol_residual_halving", "tol_lattice_residual", "tol_endpoints",
    "exclude_margin"};

struct RunOptions {
  std::string config;
  std::map<std::string, std::string> overrides;
};

void add_run_options(CLI::App* sub, RunOptions& opts) {
  sub->add_option("--config", opts.config, "key = value configuration file")->check(CLI::ExistingFile);
  for (const char* key : kKeys) {
    sub->add_option_function<std::string>(
        std::string("--") + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
        "override config key " + std::string(key));
  }
}

int report(ang_status st) {
  if (st != ANG_OK) std::fprintf(stderr, "error: %s\n", ang_last_error());
  return static_cast<int>(st);
}

// Returns a configured handle or nullptr after printing the error.
ang_config* make_config(const RunOptions& opts, int& code) {
  ang_config* cfg = nullptr;
  ang_status st = ang_config_create(&cfg);
  if (st == ANG_OK && !opts.config.empty()) st = ang_config_load_file(cfg, opts.config.c_str());
  // Overrides are applied in key order so the result does not depend on
  // their order on the command line.
  for (const char* key : kKeys) {
    if (st != ANG_OK) break;
    const auto it = opts.overrides.find(key);
    if (it != opts.overrides.end()) st = ang_config_set(cfg, key, it->second.c_str());
  }
  if (st != ANG_OK) {
    code = report(st);
    ang_config_destroy(cfg);
    return nullptr;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit curves of nearest-neighbor recurrence coefficients for Angelesco systems"};
  app.set_version_flag("--version", std::string(ang_version()));
  app.require_subcommand(1);

  RunOptions compute_opts, validate_opts;
  auto* compute = app.add_subcommand("compute", "compute limit curves and write CSV files");
  add_run_options(compute, compute_opts);
  auto* validate = app.add_subcommand("validate", "run all methods and check their agreement");
  add_run_options(validate, validate_opts);

  std::vector<std::string> csvs, labels;
  std::string out = "plot.svg", title;
  auto* plot = app.add_subcommand("plot", "draw CSV curves as an SVG figure");
  plot->add_option("csv", csvs, "CSV files written by compute")->required();
  plot->add_option("-o,--out", out, "output SVG path");
  plot->add_option("--label", labels, "legend label per CSV file (repeatable)");
  plot->add_option("--title", title, "figure title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : ANG_INPUT_ERROR;
  }

  int code = 0;
  if (*compute) {
    ang_config* cfg = make_config(compute_opts, code);
    if (!cfg) return code;
    code = report(ang_run_compute(cfg, nullptr));
    ang_config_destroy(cfg);
  } else if (*validate) {
    ang_config* cfg = make_config(validate_opts, code);
    if (!cfg) return code;
    std::vector<char> failures(4096, '\0');
    const ang_status st = ang_run_validate(cfg, failures.data(), failures.size());
    if (st == ANG_OK) {
      std::puts("validation passed");
    } else if (st == ANG_VALIDATION_FAILED) {
      std::printf("validation failed: %s\n", failures.data());
    } else {
      report(st);
    }
    code = static_cast<int>(st);
    ang_config_destroy(cfg);
  } else if (*plot) {
    if (!labels.empty() && labels.size() != csvs.size()) {
      std::fprintf(stderr, "error: expected %zu labels, got %zu\n", csvs.size(), labels.size());
      return ANG_INPUT_ERROR;
    }
    std::vector<const char*> paths, names;
    for (const auto& p : csvs) paths.push_back(p.c_str());
    for (const auto& l : labels) names.push_back(l.c_str());
    code = report(ang_run_plot(paths.data(), names.empty() ? nullptr : names.data(), paths.size(),
                               out.c_str(), title.c_str()));
  }
  return code;
}
