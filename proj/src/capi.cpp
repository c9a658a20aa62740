#include "angelesco/angelesco.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <exception>
#include <new>
#include <set>
#include <string>

#include "angelesco/errors.hpp"
#include "angelesco/lattice.hpp"
#include "angelesco/ode.hpp"
#include "angelesco/run.hpp"
#include "angelesco/surface.hpp"

struct ang_config {
  angelesco::RunConfig cfg;
};

struct ang_curve {
  angelesco::LimitCurve curve;
};

namespace {

thread_local std::string g_last_error;

ang_status fail(ang_status st, const char* msg) {
  g_last_error = msg;
  return st;
}

template <class F>
ang_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const angelesco::InputError& e) {
    return fail(ANG_INPUT_ERROR, e.what());
  } catch (const angelesco::NumericalFailure& e) {
    return fail(ANG_NUMERICAL_FAILURE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ANG_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(ANG_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(ANG_INTERNAL_ERROR, "unknown error");
  }
}

ang_point to_c(const angelesco::LimitPoint& p) { return {p.s, p.A1, p.A2, p.B1, p.B2}; }

}  // namespace

extern "C" {

const char* ang_version(void) { return "1.0.0"; }

const char* ang_last_error(void) { return g_last_error.c_str(); }

ang_status ang_config_create(ang_config** out) {
  if (!out) return fail(ANG_INPUT_ERROR, "null output pointer");
  return guarded([&] {
    *out = new ang_config{};
    return ANG_OK;
  });
}

void ang_config_destroy(ang_config* cfg) { delete cfg; }

ang_status ang_config_load_file(ang_config* cfg, const char* path) {
  if (!cfg || !path) return fail(ANG_INPUT_ERROR, "null argument");
  return guarded([&] {
    angelesco::RunConfig next = angelesco::load_config(path, cfg->cfg);
    cfg->cfg = std::move(next);
    return ANG_OK;
  });
}

ang_status ang_config_set(ang_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(ANG_INPUT_ERROR, "null argument");
  return guarded([&] {
    angelesco::RunConfig next = cfg->cfg;
    angelesco::apply_setting(next, key, value);
    cfg->cfg = std::move(next);
    return ANG_OK;
  });
}

ang_status ang_run_compute(const ang_config* cfg, const char* methods) {
  if (!cfg) return fail(ANG_INPUT_ERROR, "null config");
  return guarded([&] {
    angelesco::RunConfig c = cfg->cfg;
    if (methods && *methods) c.methods = angelesco::parse_methods(methods);
    angelesco::run_compute(c);
    return ANG_OK;
  });
}

ang_status ang_run_validate(const ang_config* cfg, char* failures, size_t failures_size) {
  if (!cfg) return fail(ANG_INPUT_ERROR, "null config");
  if (failures && failures_size) failures[0] = '\0';
  return guarded([&] {
    const angelesco::RunResult r = angelesco::run_validate(cfg->cfg);
    if (r.passed) return ANG_OK;
    std::string names;
    for (const auto& f : r.failures) {
      if (!names.empty()) names += ',';
      names += f;
    }
    if (failures && failures_size) {
      const std::size_t n = std::min(names.size(), failures_size - 1);
      std::memcpy(failures, names.data(), n);
      failures[n] = '\0';
    }
    g_last_error = "validation failed: " + names;
    return ANG_VALIDATION_FAILED;
  });
}

ang_status ang_run_plot(const char* const* csv_paths, const char* const* labels, size_t n_paths,
                        const char* out_path, const char* title) {
  if (!csv_paths || !out_path) return fail(ANG_INPUT_ERROR, "null argument");
  return guarded([&] {
    std::vector<std::string> paths, names;
    for (size_t i = 0; i < n_paths; ++i) {
      if (!csv_paths[i]) throw angelesco::InputError("null CSV path");
      paths.emplace_back(csv_paths[i]);
      if (labels) {
        if (!labels[i]) throw angelesco::InputError("null label");
        names.emplace_back(labels[i]);
      }
    }
    angelesco::run_plot(paths, out_path, names, title ? title : "");
    return ANG_OK;
  });
}

ang_status ang_curve_compute(const ang_config* cfg, ang_method method, size_t grid_points,
                             ang_curve** out) {
  if (!cfg || !out) return fail(ANG_INPUT_ERROR, "null argument");
  *out = nullptr;
  return guarded([&] {
    using namespace angelesco;
    RunConfig c = cfg->cfg;
    if (grid_points) c.grid_points = grid_points;
    validate(c);
    const auto grid = uniform_grid(c.grid_points);
    auto result = std::make_unique<ang_curve>();
    switch (method) {
      case ANG_METHOD_DIS: {
        const int snap = c.lattice_level / 2;
        const NnrrLattice lat = solve_lattice(c.system, c.lattice_level, {snap});
        result->curve = curve_from_lattice(lat, grid, c.richardson);
        break;
      }
      case ANG_METHOD_ODE: {
        const PlateauInfo pl = plateau_for(c.system);
        const BoundaryPack pack = boundary_values(c.system);
        const OdeSettings st{c.ode_steps, c.eps_start};
        const OdeBranch fw = integrate_branch(pack, Side::left, pl.c1, st);
        const OdeBranch bw = integrate_branch(pack, Side::right, pl.c2, st);
        result->curve = assemble_curve(fw, bw, pl.c1, pl.c2, grid);
        break;
      }
      case ANG_METHOD_SURFACE:
        result->curve = surface_curve(c.system, grid);
        break;
      default:
        throw InputError("unknown method");
    }
    *out = result.release();
    return ANG_OK;
  });
}

size_t ang_curve_size(const ang_curve* curve) { return curve ? curve->curve.points.size() : 0; }

ang_status ang_curve_point(const ang_curve* curve, size_t index, ang_point* out) {
  if (!curve || !out) return fail(ANG_INPUT_ERROR, "null argument");
  if (index >= curve->curve.points.size()) return fail(ANG_INPUT_ERROR, "point index out of range");
  *out = to_c(curve->curve.points[index]);
  return ANG_OK;
}

void ang_curve_destroy(ang_curve* curve) { delete curve; }

ang_status ang_plateau(const ang_config* cfg, ang_plateau_info* out) {
  if (!cfg || !out) return fail(ANG_INPUT_ERROR, "null argument");
  return guarded([&] {
    angelesco::validate(cfg->cfg.system);
    const angelesco::PlateauInfo p = angelesco::plateau_for(cfg->cfg.system);
    out->c1 = p.c1;
    out->c2 = p.c2;
    out->limits = to_c(p.plateau);
    return ANG_OK;
  });
}

}  // extern "C"
