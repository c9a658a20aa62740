#include "angelesco/system.hpp"

#include <cmath>
#include <string>

#include "angelesco/errors.hpp"

namespace angelesco {

std::string_view to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::chebyshev1: return "chebyshev1";
    case WeightKind::chebyshev2: return "chebyshev2";
    case WeightKind::uniform: return "uniform";
  }
  return "unknown";
}

WeightKind parse_weight(std::string_view name) {
  if (name == "chebyshev1") return WeightKind::chebyshev1;
  if (name == "chebyshev2") return WeightKind::chebyshev2;
  if (name == "uniform") return WeightKind::uniform;
  throw InputError("unknown weight kind '" + std::string(name) +
                   "' (expected chebyshev1, chebyshev2 or uniform)");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::dis: return "dis";
    case Method::ode: return "ode";
    case Method::surface: return "surface";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "dis") return Method::dis;
  if (name == "ode") return Method::ode;
  if (name == "surface") return Method::surface;
  throw InputError("unknown method '" + std::string(name) +
                   "' (expected dis, ode or surface)");
}

void validate(const Interval& iv) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
    throw InputError("interval endpoints must be finite");
  if (!(iv.lo < iv.hi))
    throw InputError("interval must satisfy lo < hi");
}

void validate(const AngelescoSystem& sys) {
  validate(sys.i1);
  validate(sys.i2);
  if (sys.i1.hi > sys.i2.lo)
    throw InputError("intervals overlap: need interval1.hi <= interval2.lo");
}

void validate(const StarConfig& sc) {
  if (!(sc.alpha > 0.0) || !std::isfinite(sc.alpha))
    throw InputError("star config needs alpha > 0");
  if (!(sc.beta >= 0.0 && sc.beta < 1.0))
    throw InputError("star config needs 0 <= beta < 1");
}

void validate(const LimitCurve& curve) {
  double prev = -1.0;
  for (const auto& p : curve.points) {
    if (!(p.s >= 0.0 && p.s <= 1.0)) throw InputError("curve point with s outside [0,1]");
    if (!(p.s > prev)) throw InputError("curve s values must be strictly increasing");
    if (!(p.B2 > p.B1)) throw InputError("curve point violates B2 > B1");
    if (p.A1 < 0.0 || p.A2 < 0.0) throw InputError("curve point with negative A");
    prev = p.s;
  }
}

std::pair<StarConfig, AffineMap> star_normalize(const AngelescoSystem& sys) {
  validate(sys);
  const double width = sys.i2.hi - sys.i1.hi;
  StarConfig sc;
  sc.alpha = (sys.i1.hi - sys.i1.lo) / width;
  sc.beta = (sys.i2.lo - sys.i1.hi) / width;
  return {sc, AffineMap{width, sys.i1.hi}};
}

Reflected reflect(const AngelescoSystem& sys) {
  Reflected r;
  r.system.i1 = Interval{-sys.i2.hi, -sys.i2.lo};
  r.system.i2 = Interval{-sys.i1.hi, -sys.i1.lo};
  r.system.w1 = sys.w2;
  r.system.w2 = sys.w1;
  r.swapped = true;
  return r;
}

LimitPoint pushforward_limits(const LimitPoint& p, const AffineMap& map, bool swapped) {
  if (map.scale == 0.0) throw InputError("affine map with zero scale");
  LimitPoint q = p;
  if (swapped) {
    q.s = 1.0 - p.s;
    q.A1 = p.A2;
    q.A2 = p.A1;
    q.B1 = p.B2;
    q.B2 = p.B1;
  }
  const double k2 = map.scale * map.scale;
  q.A1 *= k2;
  q.A2 *= k2;
  q.B1 = map.apply(q.B1);
  q.B2 = map.apply(q.B2);
  return q;
}

std::vector<double> uniform_grid(std::size_t n, double lo, double hi) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  if (n > 1) g.back() = hi;
  return g;
}

}  // namespace angelesco
