#include "angelesco/run.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "angelesco/crossval.hpp"
#include "angelesco/errors.hpp"
#include "angelesco/io.hpp"
#include "angelesco/lattice.hpp"
#include "angelesco/ode.hpp"
#include "angelesco/surface.hpp"

namespace angelesco {

using nlohmann::json;

namespace {

std::string trim(std::string_view v) {
  const auto b = v.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = v.find_last_not_of(" \t\r\n");
  return std::string(v.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss{std::string(v)};
  while (std::getline(ss, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double to_real(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(x))
    throw InputError("'" + std::string(key) + "' expects a real number, got '" + s + "'");
  return x;
}

long long to_count(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || x <= 0)
    throw InputError("'" + std::string(key) + "' expects a positive integer, got '" + s + "'");
  return x;
}

bool to_bool(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw InputError("'" + std::string(key) + "' expects true or false, got '" + s + "'");
}

Interval to_interval(std::string_view key, std::string_view v) {
  const auto parts = split_list(v);
  if (parts.size() != 2) throw InputError("'" + std::string(key) + "' expects two comma-separated reals");
  Interval iv{to_real(key, parts[0]), to_real(key, parts[1])};
  validate(iv);
  return iv;
}

}  // namespace

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  for (const auto& name : split_list(list)) {
    const Method m = parse_method(name);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw InputError("no methods requested");
  return out;
}

void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view value) {
  const std::string key = trim(raw_key);
  Tolerances& t = cfg.tol;
  if (key == "interval1") cfg.system.i1 = to_interval(key, value);
  else if (key == "interval2") cfg.system.i2 = to_interval(key, value);
  else if (key == "weight1") cfg.system.w1 = parse_weight(trim(value));
  else if (key == "weight2") cfg.system.w2 = parse_weight(trim(value));
  else if (key == "grid_points") cfg.grid_points = static_cast<std::size_t>(to_count(key, value));
  else if (key == "lattice_level") cfg.lattice_level = static_cast<int>(to_count(key, value));
  else if (key == "snapshot_levels") {
    cfg.snapshot_levels.clear();
    for (const auto& p : split_list(value)) cfg.snapshot_levels.push_back(static_cast<int>(to_count(key, p)));
  } else if (key == "richardson") cfg.richardson = to_bool(key, value);
  else if (key == "ode_steps") cfg.ode_steps = static_cast<int>(to_count(key, value));
  else if (key == "eps_start") cfg.eps_start = to_real(key, value);
  else if (key == "residual_step") cfg.residual_step = to_real(key, value);
  else if (key == "residual_grid_points") cfg.residual_grid_points = static_cast<std::size_t>(to_count(key, value));
  else if (key == "methods") cfg.methods = parse_methods(value);
  else if (key == "output_dir") cfg.output_dir = trim(value);
  else if (key == "tol_ode_surface") t.ode_surface = to_real(key, value);
  else if (key == "tol_dis_surface") t.dis_surface = to_real(key, value);
  else if (key == "tol_dis_ode") t.dis_ode = to_real(key, value);
  else if (key == "tol_identity_surface") t.identity_surface = to_real(key, value);
  else if (key == "tol_identity_ode") t.identity_ode = to_real(key, value);
  else if (key == "tol_identity_dis") t.identity_dis = to_real(key, value);
  else if (key == "tol_ode_residual") t.ode_residual = to_real(key, value);
  else if (key == "tol_residual_halving") t.residual_halving = to_real(key, value);
  else if (key == "tol_lattice_residual") t.lattice_residual = to_real(key, value);
  else if (key == "tol_endpoints") t.endpoints = to_real(key, value);
  else if (key == "exclude_margin") t.exclude_margin = to_real(key, value);
  else throw InputError("unknown configuration key '" + key + "'");
}

RunConfig parse_config(std::istream& is, RunConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const InputError& e) {
      throw InputError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open config file '" + path + "'");
  return parse_config(f, std::move(base));
}

void validate(const RunConfig& cfg) {
  validate(cfg.system);
  if (cfg.grid_points < 2) throw InputError("grid_points must be at least 2");
  if (cfg.lattice_level < 2) throw InputError("lattice_level must be at least 2");
  for (int l : cfg.snapshot_levels)
    if (l > cfg.lattice_level) throw InputError("snapshot level exceeds lattice_level");
  if (cfg.ode_steps < 1) throw InputError("ode_steps must be positive");
  if (!(cfg.eps_start > 0.0 && cfg.eps_start <= 1e-4)) throw InputError("eps_start must lie in (0, 1e-4]");
  if (cfg.methods.empty()) throw InputError("no methods requested");
  if (cfg.output_dir.empty()) throw InputError("output_dir must not be empty");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json point_json(const LimitPoint& p) {
  return {{"A1", p.A1}, {"A2", p.A2}, {"B1", p.B1}, {"B2", p.B2}};
}

json plateau_json(const PlateauInfo& p) {
  return {{"c1", p.c1},
          {"c2", p.c2},
          {"s_alpha_direct", p.s_alpha_direct},
          {"s_alpha_reflected", p.s_alpha_reflected},
          {"limits", point_json(p.plateau)}};
}

json system_json(const AngelescoSystem& s) {
  return {{"interval1", {s.i1.lo, s.i1.hi}},
          {"interval2", {s.i2.lo, s.i2.hi}},
          {"weight1", std::string(to_string(s.w1))},
          {"weight2", std::string(to_string(s.w2))}};
}

struct DisResult {
  LimitCurve curve;
  NnrrLattice lattice;
};

DisResult compute_dis(const RunConfig& cfg, const std::vector<double>& grid) {
  std::set<int> snaps(cfg.snapshot_levels.begin(), cfg.snapshot_levels.end());
  if (snaps.empty()) snaps.insert(cfg.lattice_level / 2);
  NnrrLattice lat = solve_lattice(cfg.system, cfg.lattice_level, snaps);
  LimitCurve c = curve_from_lattice(lat, grid, cfg.richardson);
  return {std::move(c), std::move(lat)};
}

struct OdeResult {
  LimitCurve assembled;
  LimitCurve forward;
  LimitCurve backward;
};

// Integrates to `stop`, or to `fallback` if the longer branch loses positivity.
OdeBranch branch_to(const BoundaryPack& pack, Side side, double stop, double fallback,
                    const OdeSettings& st) {
  try {
    return integrate_branch(pack, side, stop, st);
  } catch (const NumericalFailure&) {
    if (stop == fallback) throw;
    return integrate_branch(pack, side, fallback, st);
  }
}

OdeResult compute_ode(const RunConfig& cfg, const std::vector<double>& grid, const PlateauInfo& plateau) {
  const BoundaryPack pack = boundary_values(cfg.system);
  const OdeSettings st{cfg.ode_steps, cfg.eps_start};
  // Branches run across the plateau for the branches-only output.
  const OdeBranch fw = branch_to(pack, Side::left, plateau.c2, plateau.c1, st);
  const OdeBranch bw = branch_to(pack, Side::right, plateau.c1, plateau.c2, st);
  OdeResult r;
  r.assembled = assemble_curve(fw, bw, plateau.c1, plateau.c2, grid);
  r.forward = branch_curve(fw, grid);
  r.backward = branch_curve(bw, grid);
  return r;
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir + "': " + ec.message());
}

void write_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  f << j.dump(2) << '\n';
}

json meta_json(const LimitCurve& c) {
  json j = json::object();
  for (const auto& [k, v] : c.meta) j[k] = v;
  return j;
}

}  // namespace

RunResult run_compute(const RunConfig& cfg) {
  validate(cfg);
  ensure_dir(cfg.output_dir);
  const auto grid = uniform_grid(cfg.grid_points);
  RunResult res;

  json side;
  side["system"] = system_json(cfg.system);
  side["grid_points"] = cfg.grid_points;
  auto t0 = Clock::now();
  const PlateauInfo plateau = plateau_for(cfg.system);
  side["plateau"] = plateau_json(plateau);
  side["timings"]["plateau"] = seconds_since(t0);

  for (Method m : cfg.methods) {
    const std::string name(to_string(m));
    const std::string file = join_path(cfg.output_dir, name + ".csv");
    json& info = side["methods"][name];
    t0 = Clock::now();
    switch (m) {
      case Method::dis: {
        const DisResult d = compute_dis(cfg, grid);
        write_csv(file, d.curve);
        const ResidualStats rs = consistency_residuals(d.lattice);
        info["lattice_level"] = cfg.lattice_level;
        info["richardson"] = cfg.richardson;
        info["max_axis_residual"] = rs.max_axis;
        info["max_interior_residual"] = rs.max_interior;
        json axis = json::array(), interior = json::array();
        for (const auto& lr : d.lattice.residuals()) {
          axis.push_back(lr.axis);
          interior.push_back(lr.interior);
        }
        info["residual_log"] = {{"axis", axis}, {"interior", interior}};
        break;
      }
      case Method::ode: {
        const OdeResult o = compute_ode(cfg, grid, plateau);
        write_csv(file, o.assembled);
        const std::string ffile = join_path(cfg.output_dir, "ode_forward.csv");
        const std::string bfile = join_path(cfg.output_dir, "ode_backward.csv");
        write_csv(ffile, o.forward);
        write_csv(bfile, o.backward);
        res.files.push_back(ffile);
        res.files.push_back(bfile);
        info["meta"] = meta_json(o.assembled);
        info["branches"] = {{"forward", meta_json(o.forward)}, {"backward", meta_json(o.backward)}};
        info["ode_steps"] = cfg.ode_steps;
        info["eps_start"] = cfg.eps_start;
        break;
      }
      case Method::surface: {
        const LimitCurve c = surface_curve(cfg.system, grid);
        write_csv(file, c);
        info["meta"] = meta_json(c);
        break;
      }
    }
    info["file"] = name + ".csv";
    side["timings"][name] = seconds_since(t0);
    res.files.push_back(file);
  }
  const std::string sidecar = join_path(cfg.output_dir, "run.json");
  write_json(sidecar, side);
  res.files.push_back(sidecar);
  return res;
}

RunResult run_validate(const RunConfig& cfg) {
  validate(cfg);
  ensure_dir(cfg.output_dir);
  const auto grid = uniform_grid(cfg.grid_points);
  const Tolerances& tol = cfg.tol;
  RunResult res;
  json report;
  report["system"] = system_json(cfg.system);

  auto t0 = Clock::now();
  const PlateauInfo plateau = plateau_for(cfg.system);
  report["plateau"] = plateau_json(plateau);
  const LimitCurve surface = surface_curve(cfg.system, grid);
  report["timings"]["surface"] = seconds_since(t0);
  t0 = Clock::now();
  const OdeResult ode = compute_ode(cfg, grid, plateau);
  report["timings"]["ode"] = seconds_since(t0);
  t0 = Clock::now();
  const DisResult dis = compute_dis(cfg, grid);
  report["timings"]["dis"] = seconds_since(t0);

  auto check = [&](const std::string& name, bool ok) {
    if (!ok) {
      res.failures.push_back(name);
      res.passed = false;
    }
  };

  // Comparisons. The ODE and surface plateaus coincide, so only pairs
  // involving the finite lattice skip the neighbourhood of [c1, c2].
  struct Pair {
    const char* name;
    const LimitCurve* a;
    const LimitCurve* b;
    double tol;
    double margin;
  };
  const Pair pairs[] = {
      {"ode-surface", &ode.assembled, &surface, tol.ode_surface, 0.0},
      {"dis-surface", &dis.curve, &surface, tol.dis_surface, tol.exclude_margin},
      {"dis-ode", &dis.curve, &ode.assembled, tol.dis_ode, tol.exclude_margin},
  };
  json comparisons = json::array();
  for (const auto& p : pairs) {
    std::optional<ExclusionZone> zone;
    if (p.margin > 0.0) zone = ExclusionZone{plateau.c1, plateau.c2, p.margin};
    const ComparisonReport cr = compare(*p.a, *p.b, zone);
    json fns = json::object();
    for (std::size_t j = 0; j < 4; ++j)
      fns[kFunctionNames[j]] = {{"maxAbs", cr.max_abs[j]}, {"meanAbs", cr.mean_abs[j]}};
    const bool ok = cr.passes(p.tol);
    comparisons.push_back({{"pair", p.name},
                           {"functions", fns},
                           {"tolerance", p.tol},
                           {"margin", p.margin},
                           {"compared", cr.compared},
                           {"excluded", cr.excluded},
                           {"pass", ok}});
    check(std::string("compare:") + p.name, ok);
  }
  report["comparisons"] = comparisons;

  // Identity (B2 - B1)^2 = A1/s^2 + A2/(1-s)^2 off the plateau.
  json identity = json::array();
  // The lattice curve is reported only: near s = 0 and s = 1 its finite-m
  // error in A1, A2 is amplified by 1/s^2 and 1/(1-s)^2.
  struct IdentityCase {
    const LimitCurve* curve;
    double tol;
    bool gating;
  };
  const IdentityCase id_cases[] = {{&surface, tol.identity_surface, true},
                                   {&ode.assembled, tol.identity_ode, true},
                                   {&dis.curve, tol.identity_dis, false}};
  for (const auto& ic : id_cases) {
    const IdentityReport ir = identity_checks(*ic.curve, plateau);
    const bool ok = ir.passes(ic.tol);
    const std::string name(to_string(ic.curve->method));
    identity.push_back({{"method", name},
                        {"maxIdentity", ir.max_identity},
                        {"minSeparation", ir.min_separation},
                        {"tolerance", ic.tol},
                        {"gating", ic.gating},
                        {"pass", ok}});
    if (ic.gating) check("identity:" + name, ok);
  }
  report["identity"] = identity;

  // d = 2 relations on a fine surface grid, at h and h/2.
  {
    t0 = Clock::now();
    const auto fine = uniform_grid(cfg.residual_grid_points);
    const LimitCurve sc = surface_curve(cfg.system, fine);
    json rj;
    try {
      const ResidualReport r1 = ode_residual_d2(sc, cfg.residual_step, plateau.c1, plateau.c2);
      const ResidualReport r2 = ode_residual_d2(sc, 0.5 * cfg.residual_step, plateau.c1, plateau.c2);
      const double ratio = r1.worst() / std::max(r2.worst(), 1e-300);
      const bool ok = r1.worst() <= tol.ode_residual && ratio >= tol.residual_halving;
      rj = {{"h", r1.h},
            {"maxRelative", r1.max_rel},
            {"maxRelativeHalfStep", r2.max_rel},
            {"reduction", ratio},
            {"tolerance", tol.ode_residual},
            {"pass", ok}};
      check("residual:surface", ok);
    } catch (const InputError& e) {
      rj = {{"error", e.what()}, {"pass", false}};
      check("residual:surface", false);
    }
    report["residual"] = rj;
    report["timings"]["residual"] = seconds_since(t0);
  }

  // Lattice consistency.
  {
    const ResidualStats rs = consistency_residuals(dis.lattice);
    const double worst = std::max(rs.max_axis, rs.max_interior);
    const bool ok = worst < tol.lattice_residual;
    report["lattice"] = {{"level", cfg.lattice_level},
                         {"maxAxisResidual", rs.max_axis},
                         {"maxInteriorResidual", rs.max_interior},
                         {"worstLevel", rs.worst_level},
                         {"tolerance", tol.lattice_residual},
                         {"pass", ok}};
    check("lattice:residual", ok);
  }

  // Closed-form endpoint values against the surface method just inside
  // [0,1] and against the ODE branches at the endpoints.
  {
    const BoundaryPack bp = boundary_values(cfg.system);
    const LimitPoint near0 = limits_at(cfg.system, 1e-6, plateau);
    const LimitPoint near1 = limits_at(cfg.system, 1.0 - 1e-6, plateau);
    const LimitPoint o0 = ode.assembled.points.front();
    const LimitPoint o1 = ode.assembled.points.back();
    const double dev = std::max(
        {std::abs(near1.A1 - bp.C1at1), std::abs(near1.B1 - bp.B1at1), std::abs(near0.A2 - bp.C2at0),
         std::abs(near0.B2 - bp.B2at0), std::abs(near0.B1 - bp.B1at0), std::abs(near1.B2 - bp.B2at1),
         std::abs(o1.A1 - bp.C1at1), std::abs(o1.B1 - bp.B1at1), std::abs(o0.A2 - bp.C2at0),
         std::abs(o0.B2 - bp.B2at0), std::abs(o0.B1 - bp.B1at0), std::abs(o1.B2 - bp.B2at1)});
    const bool ok = dev <= tol.endpoints;
    report["endpoints"] = {{"maxDeviation", dev}, {"tolerance", tol.endpoints}, {"pass", ok}};
    check("endpoints", ok);
  }

  report["failures"] = res.failures;
  report["pass"] = res.passed;
  const std::string out = join_path(cfg.output_dir, "validate.json");
  write_json(out, report);
  res.files.push_back(out);
  return res;
}

RunResult run_plot(const std::vector<std::string>& csv_paths, const std::string& out_path,
                   const std::vector<std::string>& labels, const std::string& title) {
  if (csv_paths.empty()) throw InputError("plot needs at least one CSV file");
  if (!labels.empty() && labels.size() != csv_paths.size())
    throw InputError("plot: number of labels must match number of CSV files");
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < csv_paths.size(); ++i) {
    PlotSeries s;
    s.label = labels.empty() ? std::filesystem::path(csv_paths[i]).stem().string() : labels[i];
    s.curve = read_csv(csv_paths[i]);
    series.push_back(std::move(s));
  }
  const std::string svg = render_svg(series, title);
  const auto parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) ensure_dir(parent.string());
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + out_path + "' for writing");
  f << svg;
  RunResult r;
  r.files.push_back(out_path);
  return r;
}

}  // namespace angelesco
