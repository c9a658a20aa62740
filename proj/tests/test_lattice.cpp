#include <doctest.h>

#include <cmath>
#include <set>

#include "angelesco/errors.hpp"
#include "angelesco/lattice.hpp"
#include "angelesco/surface.hpp"
#include "moment_oracle.hpp"

using namespace angelesco;

namespace {

std::set<int> all_levels(int m) {
  std::set<int> s;
  for (int l = 0; l <= m; ++l) s.insert(l);
  return s;
}

}  // namespace

TEST_CASE("origin and first sites") {
  AngelescoSystem sys;
  const NnrrLattice lat = solve_lattice(sys, 3, all_levels(3));
  const NnrrSite& o = lat.snapshot(0)[0];
  CHECK(o.a1 == 0.0);
  CHECK(o.a2 == 0.0);
  CHECK(o.b1 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(o.b2 == doctest::Approx(0.5).epsilon(1e-14));
  // Site (1,1), frozen from a 60-digit moment computation.
  const NnrrSite& s = lat.snapshot(2)[1];
  CHECK(s.b1 == doctest::Approx(-0.96590909090909091).epsilon(1e-12));
  CHECK(s.b2 == doctest::Approx(0.35576923076923077).epsilon(1e-12));
  CHECK(s.a1 == doctest::Approx(0.22916666666666667).epsilon(1e-12));
  CHECK(s.a2 == doctest::Approx(0.067708333333333333).epsilon(1e-12));
  // Site (2,3).
  const NnrrLattice lat5 = solve_lattice(sys, 5, {5});
  const NnrrSite& t = lat5.snapshot(5)[2];
  CHECK(t.b1 == doctest::Approx(-0.98405017921146953).epsilon(1e-11));
  CHECK(t.b2 == doctest::Approx(0.34854371796666796).epsilon(1e-11));
  CHECK(t.a1 == doctest::Approx(0.21938952480055498).epsilon(1e-11));
  CHECK(t.a2 == doctest::Approx(0.071005719993319716).epsilon(1e-11));
}

TEST_CASE("every site matches the moment oracle for small levels") {
  for (WeightKind w : {WeightKind::chebyshev1, WeightKind::chebyshev2, WeightKind::uniform}) {
    AngelescoSystem sys;
    sys.w1 = sys.w2 = w;
    sys.i2 = {0.25, 1.0};
    const int m = 6;
    const NnrrLattice lat = solve_lattice(sys, m, all_levels(m));
    const oracle::MomentOracle orc(sys, m);
    for (int level = 0; level <= m; ++level)
      for (int k = 0; k <= level; ++k) {
        CAPTURE(level);
        CAPTURE(k);
        const NnrrSite& s = lat.snapshot(level)[k];
        const oracle::Site o = orc.site(k, level - k);
        CHECK(std::abs(s.b1 - o.b1) < 1e-10);
        CHECK(std::abs(s.b2 - o.b2) < 1e-10);
        CHECK(std::abs(s.a1 - o.a1) < 1e-10);
        CHECK(std::abs(s.a2 - o.a2) < 1e-10);
      }
  }
}

TEST_CASE("axis rows keep their boundary data") {
  AngelescoSystem sys;
  const NnrrLattice lat = solve_lattice(sys, 200, {50, 200});
  for (int level : {50, 200}) {
    const Diagonal& d = lat.snapshot(level);
    REQUIRE(d.size() == static_cast<std::size_t>(level + 1));
    CHECK(d[level].b1 == -1.0);
    CHECK(d[level].a2 == 0.0);
    CHECK(d[0].a1 == 0.0);
    CHECK(d[0].b2 == doctest::Approx(0.5).epsilon(1e-14));
    for (int k = 1; k < level; ++k) {
      CHECK(d[k].a1 > 0.0);
      CHECK(d[k].a2 > 0.0);
      CHECK(d[k].b2 > d[k].b1);
    }
  }
}

TEST_CASE("consistency residuals stay small") {
  AngelescoSystem sys;
  const NnrrLattice lat = solve_lattice(sys, 400, {});
  const ResidualStats rs = consistency_residuals(lat);
  CHECK(rs.max_axis < 1e-10);
  CHECK(rs.max_interior < 1e-10);
  CHECK(lat.residuals().size() == 400u);
}

TEST_CASE("ray limits") {
  AngelescoSystem sys;
  const int m = 400;
  const NnrrLattice lat = solve_lattice(sys, m, {m / 2});
  const LimitPoint at1 = ray_limit(lat, 1.0);
  const NnrrSite& axis = lat.top()[m];
  CHECK(at1.A1 == axis.a1);
  CHECK(at1.B1 == axis.b1);
  CHECK(at1.A2 == 0.0);
  CHECK(ray_limit(lat, 0.0).A1 == 0.0);

  // Off-grid s interpolates linearly between neighbours.
  const double s = 100.5 / m;
  const LimitPoint mid = ray_limit(lat, s);
  CHECK(mid.B1 == doctest::Approx(0.5 * (lat.top()[100].b1 + lat.top()[101].b1)).epsilon(1e-14));

  const LimitCurve c = curve_from_lattice(lat, {0.0, 0.25, 1.0});
  CHECK(c.method == Method::dis);
  CHECK(c.points.front().A1 == 0.0);
  CHECK(c.points.back().A2 == 0.0);
  CHECK(c.points[1].s == 0.25);

  CHECK_THROWS_AS(ray_limit(lat, 1.5), InputError);
  const NnrrLattice bare = solve_lattice(sys, 10, {});
  CHECK_THROWS_AS(ray_limit(bare, 0.5, true), InputError);
  CHECK_THROWS_AS(bare.snapshot(3), InputError);
}

TEST_CASE("dis agrees with the surface method at m = 1500") {
  AngelescoSystem sys;
  const NnrrLattice lat = solve_lattice(sys, 1500, {750});
  const LimitPoint d = ray_limit(lat, 0.5);
  const LimitPoint e = limits_at(sys, 0.5);
  CHECK(std::abs(d.A1 - e.A1) < 2e-2);
  CHECK(std::abs(d.A2 - e.A2) < 2e-2);
  CHECK(std::abs(d.B1 - e.B1) < 2e-2);
  CHECK(std::abs(d.B2 - e.B2) < 2e-2);
  const LimitPoint r = ray_limit(lat, 0.5, true);
  CHECK(std::abs(r.B1 - e.B1) < std::abs(d.B1 - e.B1));
}

TEST_CASE("Nevai limit: top-diagonal values are Cauchy in m") {
  AngelescoSystem sys;
  const auto value = [&](int m) { return ray_limit(solve_lattice(sys, m, {}), 0.5).B2; };
  const double d1 = std::abs(value(200) - value(100));
  const double d2 = std::abs(value(400) - value(200));
  CHECK(d2 < d1);
}

TEST_CASE("invalid inputs") {
  AngelescoSystem sys;
  CHECK_THROWS_AS(solve_lattice(sys, 1, {}), InputError);
  AngelescoSystem bad = sys;
  bad.i2 = {-1, 1};
  CHECK_THROWS_AS(solve_lattice(bad, 5, {}), InputError);
}
