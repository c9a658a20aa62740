#pragma once

// Interval-pair configurations, star-form normalization and the affine
// push-forward of coefficient limits.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace angelesco {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

enum class WeightKind { chebyshev1, chebyshev2, uniform };

std::string_view to_string(WeightKind kind);
WeightKind parse_weight(std::string_view name);  // throws InputError

// Two measures on [i1.lo, i1.hi] and [i2.lo, i2.hi] with i1.hi <= i2.lo.
struct AngelescoSystem {
  Interval i1{-2.0, 0.0};
  Interval i2{0.0, 1.0};
  WeightKind w1 = WeightKind::chebyshev2;
  WeightKind w2 = WeightKind::chebyshev2;

  bool touching() const { return i1.hi == i2.lo; }
};

void validate(const Interval& iv);
void validate(const AngelescoSystem& sys);

// Normalized pair [-alpha, 0], [beta, 1].
struct StarConfig {
  double alpha = 1.0;
  double beta = 0.0;
};

void validate(const StarConfig& sc);

// x_user = scale * y_star + shift. A negative scale encodes a reflection.
struct AffineMap {
  double scale = 1.0;
  double shift = 0.0;

  double apply(double y) const { return scale * y + shift; }
};

// Limits of the recurrence coefficients along the ray with parameter s.
struct LimitPoint {
  double s = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;
};

enum class Method { dis, ode, surface };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);  // throws InputError

struct LimitCurve {
  std::vector<LimitPoint> points;
  Method method = Method::surface;
  std::map<std::string, double> meta;
};

// Checks strictly increasing s, s in [0,1], B2 > B1, A >= 0.
void validate(const LimitCurve& curve);

std::pair<StarConfig, AffineMap> star_normalize(const AngelescoSystem& sys);

// The system seen through x -> -x. Measure roles 1 and 2 swap and the ray
// parameter s maps to 1 - s.
struct Reflected {
  AngelescoSystem system;
  bool swapped = true;
};

Reflected reflect(const AngelescoSystem& sys);

// Maps a limit point computed in star (or reflected) coordinates to the
// coordinates described by `map`. With `swapped`, the indices 1 <-> 2 are
// exchanged and s -> 1 - s before the affine action A -> k^2 A, B -> k B + c.
LimitPoint pushforward_limits(const LimitPoint& p, const AffineMap& map, bool swapped);

// Uniformly spaced grid of n points on [lo, hi]; n == 1 yields {lo}.
std::vector<double> uniform_grid(std::size_t n, double lo = 0.0, double hi = 1.0);

}  // namespace angelesco
