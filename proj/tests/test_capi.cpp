#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "angelesco/angelesco.h"

namespace fs = std::filesystem;

namespace {

struct Config {
  ang_config* p = nullptr;
  Config() { REQUIRE(ang_config_create(&p) == ANG_OK); }
  ~Config() { ang_config_destroy(p); }
};

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("angelesco_test_capi_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::string(ang_version()).size() > 0);
  Config c;
  CHECK(ang_config_set(c.p, "no_such_key", "1") == ANG_INPUT_ERROR);
  CHECK(std::string(ang_last_error()).find("no_such_key") != std::string::npos);
  CHECK(ang_config_set(c.p, "grid_points", "11") == ANG_OK);
  CHECK(std::string(ang_last_error()).empty());
}

TEST_CASE("null arguments") {
  CHECK(ang_config_create(nullptr) == ANG_INPUT_ERROR);
  CHECK(ang_config_set(nullptr, "a", "b") == ANG_INPUT_ERROR);
  CHECK(ang_run_compute(nullptr, nullptr) == ANG_INPUT_ERROR);
  CHECK(ang_curve_size(nullptr) == 0u);
  ang_config_destroy(nullptr);
  ang_curve_destroy(nullptr);
}

TEST_CASE("failed set leaves the config unchanged") {
  Config c;
  REQUIRE(ang_config_set(c.p, "interval2", "0.25, 1") == ANG_OK);
  CHECK(ang_config_set(c.p, "interval2", "2, 1") == ANG_INPUT_ERROR);
  ang_plateau_info info{};
  REQUIRE(ang_plateau(c.p, &info) == ANG_OK);
  CHECK(info.c1 < info.c2);
}

TEST_CASE("curves through the C interface") {
  Config c;
  for (ang_method m : {ANG_METHOD_SURFACE, ANG_METHOD_ODE, ANG_METHOD_DIS}) {
    if (m == ANG_METHOD_DIS) REQUIRE(ang_config_set(c.p, "lattice_level", "300") == ANG_OK);
    ang_curve* curve = nullptr;
    REQUIRE(ang_curve_compute(c.p, m, 5, &curve) == ANG_OK);
    REQUIRE(ang_curve_size(curve) == 5u);
    ang_point first{}, last{};
    CHECK(ang_curve_point(curve, 0, &first) == ANG_OK);
    CHECK(ang_curve_point(curve, 4, &last) == ANG_OK);
    CHECK(first.s == 0.0);
    CHECK(first.A1 == 0.0);
    CHECK(last.A2 == 0.0);
    CHECK(std::abs(last.A1 - 0.25) < 1e-3);
    CHECK(ang_curve_point(curve, 5, &last) == ANG_INPUT_ERROR);
    ang_curve_destroy(curve);
  }
  ang_curve* curve = nullptr;
  CHECK(ang_curve_compute(c.p, static_cast<ang_method>(7), 5, &curve) == ANG_INPUT_ERROR);
  CHECK(curve == nullptr);
}

TEST_CASE("plateau") {
  Config c;
  ang_plateau_info info{};
  REQUIRE(ang_plateau(c.p, &info) == ANG_OK);
  CHECK(info.c1 == doctest::Approx(0.5985242517).epsilon(1e-9));
  CHECK(info.c1 == info.c2);
}

TEST_CASE("compute, validate and plot") {
  const fs::path out = scratch("run");
  Config c;
  REQUIRE(ang_config_set(c.p, "output_dir", out.string().c_str()) == ANG_OK);
  REQUIRE(ang_config_set(c.p, "lattice_level", "400") == ANG_OK);
  CHECK(ang_run_compute(c.p, "surface,ode") == ANG_OK);
  CHECK(fs::exists(out / "surface.csv"));
  CHECK(fs::exists(out / "ode.csv"));
  CHECK_FALSE(fs::exists(out / "dis.csv"));
  CHECK(ang_run_compute(c.p, " , ") == ANG_INPUT_ERROR);

  char failures[256];
  CHECK(ang_run_validate(c.p, failures, sizeof failures) == ANG_OK);
  CHECK(std::string(failures).empty());
  REQUIRE(ang_config_set(c.p, "tol_ode_surface", "1e-16") == ANG_OK);
  CHECK(ang_run_validate(c.p, failures, sizeof failures) == ANG_VALIDATION_FAILED);
  CHECK(std::string(failures) == "compare:ode-surface");
  char tiny[4];
  CHECK(ang_run_validate(c.p, tiny, sizeof tiny) == ANG_VALIDATION_FAILED);
  CHECK(std::string(tiny) == "com");

  const std::string a = (out / "surface.csv").string(), b = (out / "ode.csv").string();
  const char* paths[] = {a.c_str(), b.c_str()};
  const char* labels[] = {"surface", "ode"};
  const std::string svg = (out / "fig.svg").string();
  CHECK(ang_run_plot(paths, labels, 2, svg.c_str(), "curves") == ANG_OK);
  CHECK(fs::file_size(svg) > 0);
  std::ofstream(out / "bad.csv") << "s,A1\n1,2\n";
  const std::string bad = (out / "bad.csv").string();
  const char* bad_paths[] = {bad.c_str()};
  CHECK(ang_run_plot(bad_paths, nullptr, 1, svg.c_str(), nullptr) == ANG_INPUT_ERROR);
  fs::remove_all(out);
}

TEST_CASE("numerical failure status") {
  Config c;
  REQUIRE(ang_config_set(c.p, "ode_steps", "1") == ANG_OK);
  ang_curve* curve = nullptr;
  CHECK(ang_curve_compute(c.p, ANG_METHOD_ODE, 11, &curve) == ANG_NUMERICAL_FAILURE);
  CHECK(std::string(ang_last_error()).find("positivity") != std::string::npos);
}

TEST_CASE("config file loading") {
  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "a.cfg") << "# test\ninterval2 = 0.25, 1\n";
  std::ofstream(dir / "b.cfg") << "interval2 = 0.25 1\n";
  Config c;
  CHECK(ang_config_load_file(c.p, (dir / "a.cfg").string().c_str()) == ANG_OK);
  ang_plateau_info info{};
  REQUIRE(ang_plateau(c.p, &info) == ANG_OK);
  CHECK(info.c1 < info.c2);
  CHECK(ang_config_load_file(c.p, (dir / "b.cfg").string().c_str()) == ANG_INPUT_ERROR);
  CHECK(ang_config_load_file(c.p, (dir / "missing.cfg").string().c_str()) == ANG_INPUT_ERROR);
  fs::remove_all(dir);
}
