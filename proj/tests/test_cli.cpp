#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    const fs::path p = fs::temp_directory_path() / "angelesco_test_cli";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const fs::path log = workdir() / "stdout.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && '" + ANGELESCO_CLI + "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(log);
  std::stringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  return r;
}

std::size_t lines(const fs::path& p) {
  std::ifstream f(p);
  std::size_t n = 0;
  for (std::string l; std::getline(f, l);) ++n;
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("compute --no-such-flag 1").code == 2);
}

TEST_CASE("compute") {
  const Result r = run("compute --output_dir c1 --lattice_level 300");
  CHECK(r.code == 0);
  for (const char* f : {"dis.csv", "ode.csv", "surface.csv", "run.json"}) CHECK(fs::exists(workdir() / "c1" / f));

  CHECK(run("compute --methods surface --grid_points 3 --output_dir c2").code == 0);
  CHECK(lines(workdir() / "c2" / "surface.csv") == 4u);
  CHECK_FALSE(fs::exists(workdir() / "c2" / "dis.csv"));
}

TEST_CASE("compute exit codes") {
  const Result empty = run("compute --methods '' --output_dir c3");
  CHECK(empty.code == 2);
  CHECK(empty.out.find("error") != std::string::npos);
  CHECK(run("compute --interval1 1,0").code == 2);
  CHECK(run("compute --config missing.cfg").code == 2);
  CHECK(run("compute --methods ode --ode_steps 1 --output_dir c4").code == 3);
}

TEST_CASE("config file with command-line override") {
  std::ofstream(workdir() / "separated.cfg") << "# gapped system\ninterval2 = 0.25, 1\nmethods = surface\n"
                                           "grid_points = 11\noutput_dir = cfgout\n";
  CHECK(run("compute --config separated.cfg").code == 0);
  CHECK(lines(workdir() / "cfgout" / "surface.csv") == 12u);
  CHECK(run("compute --config separated.cfg --grid_points 5").code == 0);
  CHECK(lines(workdir() / "cfgout" / "surface.csv") == 6u);
  std::ofstream(workdir() / "bad.cfg") << "grid_points = many\n";
  CHECK(run("compute --config bad.cfg").code == 2);
}

TEST_CASE("validate") {
  const Result ok = run("validate --output_dir v1");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("validation passed") != std::string::npos);
  CHECK(fs::exists(workdir() / "v1" / "validate.json"));

  const Result gap = run("validate --interval2 0.25,1 --output_dir v2");
  CHECK(gap.code == 0);

  const Result broken = run("validate --tol_dis_surface 1e-9 --lattice_level 300 --output_dir v3");
  CHECK(broken.code == 1);
  CHECK(broken.out.find("compare:dis-surface") != std::string::npos);
}

TEST_CASE("plot") {
  REQUIRE(run("compute --output_dir p1 --lattice_level 300").code == 0);
  const Result r = run("plot p1/dis.csv p1/ode.csv p1/surface.csv -o p1/touching.svg --title 'touching'");
  CHECK(r.code == 0);
  const std::string svg = slurp(workdir() / "p1" / "touching.svg");
  std::size_t n = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++n;
  CHECK(n == 12u);

  CHECK(run("plot p1/surface.csv -o p1/one.svg --label exact").code == 0);
  CHECK(slurp(workdir() / "p1" / "one.svg").find(">exact<") != std::string::npos);

  std::ofstream(workdir() / "p1" / "broken.csv") << "s,A1,A2,B1,B2\n0,0,0,oops,1\n";
  CHECK(run("plot p1/broken.csv -o p1/x.svg").code == 2);
  CHECK(run("plot p1/surface.csv --label a --label b").code == 2);
  CHECK(run("plot p1/nothere.csv").code == 2);
}
