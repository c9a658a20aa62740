#include "angelesco/crossval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "angelesco/errors.hpp"
#include "angelesco/lattice.hpp"

namespace angelesco {

std::array<double, 4> as_array(const LimitPoint& p) { return {p.A1, p.A2, p.B1, p.B2}; }

double ComparisonReport::worst() const { return *std::max_element(max_abs.begin(), max_abs.end()); }

double ResidualReport::worst() const { return *std::max_element(max_rel.begin(), max_rel.end()); }

double ConvergenceRow::max_error() const { return *std::max_element(error.begin(), error.end()); }

double ConvergenceRow::max_richardson() const {
  return *std::max_element(richardson.begin(), richardson.end());
}

bool ExclusionZone::excludes(double s) const {
  if (margin <= 0.0) return false;
  const double dist = std::min(std::abs(s - c1), std::abs(s - c2));
  return dist < margin;
}

LimitPoint sample(const LimitCurve& c, double s) {
  const auto& pts = c.points;
  if (pts.empty()) throw InputError("cannot sample an empty curve");
  if (s <= pts.front().s) return pts.front();
  if (s >= pts.back().s) return pts.back();
  auto it = std::lower_bound(pts.begin(), pts.end(), s,
                             [](const LimitPoint& p, double v) { return p.s < v; });
  const LimitPoint& hi = *it;
  if (hi.s == s) return hi;
  const LimitPoint& lo = *(it - 1);
  const double t = (s - lo.s) / (hi.s - lo.s);
  auto lerp = [t](double a, double b) { return a + t * (b - a); };
  return {s, lerp(lo.A1, hi.A1), lerp(lo.A2, hi.A2), lerp(lo.B1, hi.B1), lerp(lo.B2, hi.B2)};
}

namespace {

bool same_grid(const LimitCurve& a, const LimitCurve& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i].s != b.points[i].s) return false;
  return true;
}

}  // namespace

ComparisonReport compare(const LimitCurve& a, const LimitCurve& b,
                         std::optional<ExclusionZone> zone) {
  ComparisonReport r;
  r.resampled = !same_grid(a, b);
  if (b.points.empty()) throw InputError("compare: empty curve");
  const double lo = b.points.front().s, hi = b.points.back().s;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const LimitPoint& pa = a.points[i];
    if (zone && zone->excludes(pa.s)) {
      ++r.excluded;
      continue;
    }
    if (r.resampled && (pa.s < lo || pa.s > hi)) continue;
    const LimitPoint pb = r.resampled ? sample(b, pa.s) : b.points[i];
    const auto va = as_array(pa), vb = as_array(pb);
    for (std::size_t j = 0; j < 4; ++j) {
      const double d = std::abs(va[j] - vb[j]);
      r.max_abs[j] = std::max(r.max_abs[j], d);
      r.mean_abs[j] += d;
    }
    ++r.compared;
  }
  if (r.compared == 0) throw InputError("compare: curves have no overlap");
  for (auto& m : r.mean_abs) m /= static_cast<double>(r.compared);
  return r;
}

ResidualReport ode_residual_d2(const LimitCurve& c, double h, double c1, double c2,
                               double neighborhood) {
  const auto& pts = c.points;
  if (pts.size() < 3) throw InputError("ode_residual_d2: grid too coarse");
  const double spacing = (pts.back().s - pts.front().s) / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (std::abs(pts[i].s - pts[i - 1].s - spacing) > 1e-9)
      throw InputError("ode_residual_d2: grid must be uniform");
  const double ratio = h / spacing;
  const auto k = static_cast<std::size_t>(std::llround(ratio));
  if (k == 0 || std::abs(ratio - static_cast<double>(k)) > 1e-6)
    throw InputError("ode_residual_d2: grid too coarse for the requested step");

  ResidualReport r;
  r.h = h;
  const std::array<double, 4> marks{0.0, c1, c2, 1.0};
  for (std::size_t i = k; i + k < pts.size(); ++i) {
    const LimitPoint& p = pts[i];
    const double s = p.s, t = 1.0 - s;
    bool skip = s >= c1 && s <= c2;
    for (double x : marks) skip = skip || std::abs(s - x) < neighborhood;
    if (skip) continue;

    const LimitPoint& lo = pts[i - k];
    const LimitPoint& hi = pts[i + k];
    const double w = 1.0 / (hi.s - lo.s);
    const double dA1 = (hi.A1 - lo.A1) * w, dA2 = (hi.A2 - lo.A2) * w;
    const double dB1 = (hi.B1 - lo.B1) * w, dB2 = (hi.B2 - lo.B2) * w;

    const std::array<std::array<double, 4>, 4> terms{{
        {dB1 * s, dB2 * t, 0.0, 0.0},
        {p.B1 * dB1 * s, p.B2 * dB2 * t, dA1, dA2},
        {p.A1 * (dB1 - dB2) * t, dA1 * (p.B1 - p.B2) * s, 0.0, 0.0},
        {p.A2 * (dB1 - dB2) * s, dA2 * (p.B1 - p.B2) * t, 0.0, 0.0},
    }};
    for (std::size_t j = 0; j < 4; ++j) {
      double sum = 0.0, scale = 0.0;
      for (double v : terms[j]) {
        sum += v;
        scale += std::abs(v);
      }
      r.max_rel[j] = std::max(r.max_rel[j], std::abs(sum) / std::max(1.0, scale));
    }
    ++r.evaluated;
  }
  return r;
}

IdentityReport identity_checks(const LimitCurve& c, const PlateauInfo& plateau) {
  IdentityReport r;
  r.min_separation = std::numeric_limits<double>::infinity();
  for (const auto& p : c.points) {
    r.min_separation = std::min(r.min_separation, p.B2 - p.B1);
    if (p.s == 0.0) r.a1_at_0 = std::abs(p.A1);
    if (p.s == 1.0) r.a2_at_1 = std::abs(p.A2);
    if (p.s <= 0.0 || p.s >= 1.0) continue;
    if (p.s >= plateau.c1 && p.s <= plateau.c2) continue;
    const double B = p.B2 - p.B1;
    const double t = 1.0 - p.s;
    const double lhs = B * B;
    const double rhs = p.A1 / (p.s * p.s) + p.A2 / (t * t);
    r.max_identity = std::max(r.max_identity, std::abs(lhs - rhs));
    ++r.evaluated;
  }
  return r;
}

std::vector<ConvergenceRow> convergence_study(const AngelescoSystem& sys, double s,
                                              const std::vector<int>& levels) {
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1]) throw InputError("convergence_study: levels must increase");
  const auto exact = as_array(limits_at(sys, s));
  std::vector<ConvergenceRow> rows;
  for (int m : levels) {
    const NnrrLattice lat = solve_lattice(sys, m, {m / 2});
    const auto plain = as_array(ray_limit(lat, s, false));
    const auto rich = as_array(ray_limit(lat, s, true));
    ConvergenceRow row;
    row.level = m;
    for (std::size_t j = 0; j < 4; ++j) {
      row.error[j] = std::abs(plain[j] - exact[j]);
      row.richardson[j] = std::abs(rich[j] - exact[j]);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace angelesco
