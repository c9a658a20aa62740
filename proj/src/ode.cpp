#include "angelesco/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "angelesco/errors.hpp"

namespace angelesco {

BoundaryPack boundary_values(const AngelescoSystem& sys) {
  validate(sys);
  const double a1 = sys.i1.lo, b1 = sys.i1.hi, a2 = sys.i2.lo, b2 = sys.i2.hi;
  BoundaryPack p;
  const double q0 = std::sqrt((a2 - a1) * (b2 - a1));
  const double q1 = std::sqrt((b2 - b1) * (b2 - a1));

  p.Bat0 = 0.5 * (-a1 + 0.5 * (a2 + b2) + q0);
  p.Bat1 = 0.5 * (b2 - 0.5 * (a1 + b1) + q1);

  p.C2at0 = std::pow((b2 - a2) / 4.0, 2);
  p.C1at0 = p.Bat0 * p.Bat0 - p.C2at0;
  p.C1at1 = std::pow((b1 - a1) / 4.0, 2);
  p.C2at1 = p.Bat1 * p.Bat1 - p.C1at1;

  p.B1at1 = 0.5 * (a1 + b1);
  p.B2at0 = 0.5 * (a2 + b2);
  p.B1at0 = 0.5 * (a1 + 0.5 * (a2 + b2) - q0);
  p.B2at1 = 0.5 * (b2 + 0.5 * (a1 + b1) + q1);
  return p;
}

LimitPoint endpoint_limits(const BoundaryPack& pack, int side) {
  LimitPoint p;
  if (side == 0) {
    p.s = 0.0;
    p.A1 = 0.0;
    p.A2 = pack.C2at0;
    p.B1 = pack.B1at0;
    p.B2 = pack.B2at0;
  } else {
    p.s = 1.0;
    p.A1 = pack.C1at1;
    p.A2 = 0.0;
    p.B1 = pack.B1at1;
    p.B2 = pack.B2at1;
  }
  return p;
}

std::array<double, 2> rhs(double s, double C1, double C2) {
  const double t = 1.0 - s;
  // (1+s)s C1' + (2-s)(1-s) C2' = -4s C1 + 4(1-s) C2
  // (s^2/C1) C1' - ((1-s)^2/C2) C2' = -2
  const double m11 = (1.0 + s) * s, m12 = (2.0 - s) * t;
  const double m21 = s * s / C1, m22 = -t * t / C2;
  const double r1 = -4.0 * s * C1 + 4.0 * t * C2, r2 = -2.0;
  const double det = m11 * m22 - m12 * m21;
  if (det == 0.0 || !std::isfinite(det)) {
    std::ostringstream os;
    os << "ode rhs: singular system at s = " << s;
    throw NumericalFailure(os.str());
  }
  return {(r1 * m22 - m12 * r2) / det, (m11 * r2 - r1 * m21) / det};
}

std::array<double, 2> b_derivatives(double s, double C1, double C2, double dC1, double dC2) {
  const double B = std::sqrt(C1 + C2);
  return {(2.0 * C1 + s * dC1) / B * (1.0 + C2 / C1),
          (2.0 * C2 - (1.0 - s) * dC2) / B * (1.0 + C1 / C2)};
}

namespace {

// Derivatives at the endpoints, where the 2x2 system degenerates.
//   s = 0:  C2' = 2 C2,  C1' = -4 C1 - 6 C2
//   s = 1:  C1' = -2 C1, C2' = 4 C2 + 6 C1
OdeState endpoint_slope(Side side, const BoundaryPack& p) {
  OdeState d;
  if (side == Side::left) {
    d.C1 = -4.0 * p.C1at0 - 6.0 * p.C2at0;
    d.C2 = 2.0 * p.C2at0;
    const auto dB = b_derivatives(0.0, p.C1at0, p.C2at0, d.C1, d.C2);
    d.B1 = dB[0];
    d.B2 = dB[1];
  } else {
    d.C1 = -2.0 * p.C1at1;
    d.C2 = 4.0 * p.C2at1 + 6.0 * p.C1at1;
    const auto dB = b_derivatives(1.0, p.C1at1, p.C2at1, d.C1, d.C2);
    d.B1 = dB[0];
    d.B2 = dB[1];
  }
  return d;
}

OdeState endpoint_state(Side side, const BoundaryPack& p) {
  if (side == Side::left) return {0.0, p.C1at0, p.C2at0, p.B1at0, p.B2at0};
  return {1.0, p.C1at1, p.C2at1, p.B1at1, p.B2at1};
}

OdeState slope(double s, const OdeState& y) {
  const auto dC = rhs(s, y.C1, y.C2);
  const auto dB = b_derivatives(s, y.C1, y.C2, dC[0], dC[1]);
  return {0.0, dC[0], dC[1], dB[0], dB[1]};
}

OdeState axpy(const OdeState& y, double h, const OdeState& d) {
  return {y.s, y.C1 + h * d.C1, y.C2 + h * d.C2, y.B1 + h * d.B1, y.B2 + h * d.B2};
}

}  // namespace

OdeState startup(Side side, const BoundaryPack& pack, double eps) {
  if (!(eps > 0.0 && eps <= 1e-4)) throw InputError("startup offset must lie in (0, 1e-4]");
  const OdeState y0 = endpoint_state(side, pack);
  const OdeState d = endpoint_slope(side, pack);
  const double h = (side == Side::left) ? eps : -eps;
  OdeState y = axpy(y0, h, d);
  y.s = (side == Side::left) ? eps : 1.0 - eps;
  return y;
}

double OdeBranch::s_min() const {
  if (states.empty()) return 0.0;
  return std::min(states.front().s, states.back().s);
}

double OdeBranch::s_max() const {
  if (states.empty()) return 0.0;
  return std::max(states.front().s, states.back().s);
}

OdeState OdeBranch::at(double s) const {
  if (states.empty()) throw InputError("empty ODE branch");
  if (!covers(s)) {
    std::ostringstream os;
    os << "ODE branch does not cover s = " << s;
    throw InputError(os.str());
  }
  // states are monotone in s: increasing for the left branch.
  const bool inc = side == Side::left;
  auto less = [inc](const OdeState& a, double v) { return inc ? a.s < v : a.s > v; };
  auto it = std::lower_bound(states.begin(), states.end(), s, less);
  std::size_t j = static_cast<std::size_t>(it - states.begin());
  if (j == 0) return states.front();
  if (j >= states.size()) return states.back();
  const std::size_t i = j - 1;
  const OdeState& y0 = states[i];
  const OdeState& y1 = states[j];
  if (y1.s == s) return y1;
  const OdeState& d0 = slopes[i];
  const OdeState& d1 = slopes[j];
  const double h = y1.s - y0.s;
  const double t = (s - y0.s) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  auto herm = [&](double p0, double m0, double p1, double m1) {
    return h00 * p0 + h10 * h * m0 + h01 * p1 + h11 * h * m1;
  };
  OdeState r;
  r.s = s;
  r.C1 = herm(y0.C1, d0.C1, y1.C1, d1.C1);
  r.C2 = herm(y0.C2, d0.C2, y1.C2, d1.C2);
  r.B1 = herm(y0.B1, d0.B1, y1.B1, d1.B1);
  r.B2 = r.B1 + std::sqrt(r.C1 + r.C2);
  return r;
}

OdeBranch integrate_branch(const BoundaryPack& pack, Side side, double stop,
                           const OdeSettings& settings) {
  if (settings.steps_per_unit < 1) throw InputError("ode_steps must be positive");
  const double eps = settings.eps;
  const bool left = side == Side::left;
  const double start = left ? eps : 1.0 - eps;
  if (!(stop > 0.0 && stop < 1.0) || (left ? stop <= start : stop >= start)) {
    std::ostringstream os;
    os << "integrate_branch: stop " << stop << " not inside (0,1) on the "
       << (left ? "right of the left" : "left of the right") << " start";
    throw InputError(os.str());
  }

  const double span = std::abs(stop - start);
  const auto nsteps = static_cast<std::size_t>(
      std::max(1.0, std::ceil(span * settings.steps_per_unit - 1e-9)));
  const double h = (stop - start) / static_cast<double>(nsteps);

  OdeBranch br;
  br.side = side;
  br.states.reserve(nsteps + 2);
  br.slopes.reserve(nsteps + 2);

  OdeState end = endpoint_state(side, pack);
  br.states.push_back(end);
  br.slopes.push_back(endpoint_slope(side, pack));

  OdeState y = startup(side, pack, eps);
  double s = start;
  // y.B2 carries the direct B2' integration; the reported B2 comes from
  // B1 + sqrt(C1 + C2).
  auto record = [&](const OdeState& st, const OdeState& d) {
    OdeState out = st;
    const double b2 = st.B1 + std::sqrt(st.C1 + st.C2);
    br.max_b2_drift = std::max(br.max_b2_drift, std::abs(st.B2 - b2));
    out.B2 = b2;
    br.states.push_back(out);
    br.slopes.push_back(d);
  };
  record(y, slope(s, y));

  for (std::size_t i = 0; i < nsteps; ++i) {
    const OdeState k1 = slope(s, y);
    const OdeState k2 = slope(s + 0.5 * h, axpy(y, 0.5 * h, k1));
    const OdeState k3 = slope(s + 0.5 * h, axpy(y, 0.5 * h, k2));
    const OdeState k4 = slope(s + h, axpy(y, h, k3));
    OdeState yn = y;
    yn.C1 += h / 6.0 * (k1.C1 + 2 * k2.C1 + 2 * k3.C1 + k4.C1);
    yn.C2 += h / 6.0 * (k1.C2 + 2 * k2.C2 + 2 * k3.C2 + k4.C2);
    yn.B1 += h / 6.0 * (k1.B1 + 2 * k2.B1 + 2 * k3.B1 + k4.B1);
    yn.B2 += h / 6.0 * (k1.B2 + 2 * k2.B2 + 2 * k3.B2 + k4.B2);
    const double sn = (i + 1 == nsteps) ? stop : start + static_cast<double>(i + 1) * h;
    yn.s = sn;
    if (!(yn.C1 > 0.0) || !(yn.C2 > 0.0) || !std::isfinite(yn.B1)) {
      std::ostringstream os;
      os.precision(12);
      os << "ODE branch left the positivity region; last good s = " << s;
      throw NumericalFailure(os.str());
    }
    y = yn;
    s = sn;
    record(y, slope(s, y));
  }
  return br;
}

LimitPoint to_limits(const OdeState& st) {
  LimitPoint p;
  p.s = st.s;
  p.A1 = st.s * st.s * st.C1;
  p.A2 = (1.0 - st.s) * (1.0 - st.s) * st.C2;
  p.B1 = st.B1;
  p.B2 = st.B2;
  return p;
}

namespace {

double max_coord_diff(const LimitPoint& a, const LimitPoint& b) {
  return std::max({std::abs(a.A1 - b.A1), std::abs(a.A2 - b.A2), std::abs(a.B1 - b.B1),
                   std::abs(a.B2 - b.B2)});
}

}  // namespace

LimitCurve assemble_curve(const OdeBranch& forward, const OdeBranch& backward, double c1,
                          double c2, const std::vector<double>& grid) {
  if (!(c1 > 0.0 && c1 <= c2 && c2 < 1.0)) throw InputError("assemble_curve needs 0 < c1 <= c2 < 1");
  if (forward.side != Side::left || backward.side != Side::right)
    throw InputError("assemble_curve needs a left and a right branch");
  const double tol = 1e-12;
  if (forward.s_max() < c1 - tol || backward.s_min() > c2 + tol)
    throw InputError("ODE branches do not reach the plateau bounds");

  const LimitPoint at_c1 = to_limits(forward.at(std::min(c1, forward.s_max())));
  const LimitPoint at_c2 = to_limits(backward.at(std::max(c2, backward.s_min())));

  LimitCurve c;
  c.method = Method::ode;
  for (double s : grid) {
    LimitPoint p;
    if (s <= c1) {
      p = to_limits(forward.at(std::min(s, forward.s_max())));
    } else if (s >= c2) {
      p = to_limits(backward.at(std::max(s, backward.s_min())));
    } else {
      p = at_c1;
    }
    p.s = s;
    if (s == 0.0) p.A1 = 0.0;
    if (s == 1.0) p.A2 = 0.0;
    c.points.push_back(p);
  }
  c.meta["c1"] = c1;
  c.meta["c2"] = c2;
  c.meta["splice_mismatch"] = max_coord_diff(at_c1, at_c2);
  c.meta["b2_drift_forward"] = forward.max_b2_drift;
  c.meta["b2_drift_backward"] = backward.max_b2_drift;
  return c;
}

LimitCurve branch_curve(const OdeBranch& branch, const std::vector<double>& grid) {
  LimitCurve c;
  c.method = Method::ode;
  for (double s : grid)
    if (branch.covers(s)) c.points.push_back(to_limits(branch.at(s)));
  c.meta["b2_drift"] = branch.max_b2_drift;
  c.meta["s_min"] = branch.s_min();
  c.meta["s_max"] = branch.s_max();
  return c;
}

}  // namespace angelesco
