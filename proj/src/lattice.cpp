#include "angelesco/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "angelesco/errors.hpp"

namespace angelesco {

namespace {

constexpr double kSeparationGuard = 1e-12;

double separation(const NnrrSite& site, int k, int l) {
  const double d = site.b2 - site.b1;
  if (!(std::abs(d) >= kSeparationGuard))
    throw NumericalFailure("lattice: b2 - b1 vanishes at site (" + std::to_string(k) + "," +
                           std::to_string(l) + ")");
  return d;
}

}  // namespace

const Diagonal& NnrrLattice::snapshot(int level) const {
  auto it = snapshots_.find(level);
  if (it == snapshots_.end())
    throw InputError("lattice has no snapshot at level " + std::to_string(level));
  return it->second;
}

double NnrrLattice::max_residual() const {
  double r = 0.0;
  for (const auto& lr : residuals_) r = std::max({r, lr.axis, lr.interior});
  return r;
}

NnrrLattice solve_lattice(const AngelescoSystem& sys, int m, const std::set<int>& snapshot_levels) {
  if (m < 2) throw InputError("solve_lattice needs m >= 2");
  const auto mm = static_cast<std::size_t>(m);
  const AxisData ax1 = axis_data(sys, 1, mm);
  const AxisData ax2 = axis_data(sys, 2, mm);

  NnrrLattice lat;
  lat.max_level_ = m;
  lat.residuals_.reserve(mm);

  // older = level L-1, cur = level L, next = level L+1; index n1.
  Diagonal older;
  Diagonal cur(1);
  cur[0].b1 = ax1.own_b[0];
  cur[0].b2 = ax2.own_b[0];
  if (snapshot_levels.count(0)) lat.snapshots_[0] = cur;

  for (int L = 0; L < m; ++L) {
    const int next_level = L + 1;
    Diagonal next(static_cast<std::size_t>(next_level) + 1);

    // a-phase: marginal and axis values on the boundary, Nabla3A inside.
    for (int k = 0; k <= next_level; ++k) {
      const int l = next_level - k;
      NnrrSite& p = next[static_cast<std::size_t>(k)];
      if (l == 0) {
        p.a1 = ax1.own_a[static_cast<std::size_t>(k)];
        p.a2 = 0.0;
      } else if (k == 0) {
        p.a1 = 0.0;
        p.a2 = ax2.own_a[static_cast<std::size_t>(l)];
      } else {
        const auto ku = static_cast<std::size_t>(k);
        // (k, l-1) and (k-1, l) live on level L; (k-1, l-1) on level L-1.
        const NnrrSite& below = cur[ku];
        const NnrrSite& left = cur[ku - 1];
        const NnrrSite& diag = older[ku - 1];
        p.a1 = below.a1 * separation(below, k, l - 1) / separation(diag, k - 1, l - 1);
        p.a2 = left.a2 * separation(left, k - 1, l) / separation(diag, k - 1, l - 1);
        if (!(p.a1 > 0.0) || !(p.a2 > 0.0))
          throw NumericalFailure("lattice: nonpositive interior a at site (" +
                                 std::to_string(k) + "," + std::to_string(l) + ")");
      }
    }

    // b-phase: Nabla1A and Nabla2A at every site n of level L give
    // b2(n + e1) and b1(n + e2).
    LevelResidual res;
    res.level = next_level;
    for (int k = 0; k <= L; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const NnrrSite& n = cur[ku];
      const double s_up = next[ku].a1 + next[ku].a2;             // S(n + e2)
      const double s_right = next[ku + 1].a1 + next[ku + 1].a2;  // S(n + e1)
      const double dS = s_up - s_right;
      const double sep = separation(n, k, L - k);
      const double y_prop = (dS - n.b1 * n.b2 + n.b2 * n.b2) / sep;
      double y = y_prop;                  // b2(n + e1)
      double b1_up = y_prop + n.b1 - n.b2;  // b1(n + e2)
      // Sites next to an axis keep the boundary data; Nabla1A stays exact and
      // the propagated values are logged.
      if (k == L) {
        const double target = ax1.cross_b[static_cast<std::size_t>(next_level)];
        res.axis = std::max(res.axis, std::abs(y_prop - target));
        y = target;
        b1_up = y + n.b1 - n.b2;
      }
      if (k == 0) {
        const double target = ax2.cross_b[static_cast<std::size_t>(next_level)];
        res.axis = std::max(res.axis, std::abs(y_prop + n.b1 - n.b2 - target));
        b1_up = target;
        if (k != L) y = b1_up - n.b1 + n.b2;
      }
      next[ku + 1].b2 = y;
      next[ku].b1 = b1_up;
    }
    next[0].b2 = ax2.own_b[static_cast<std::size_t>(next_level)];
    next.back().b1 = ax1.own_b[static_cast<std::size_t>(next_level)];

    // Nabla2A with the stored values.
    for (int k = 0; k <= L; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const NnrrSite& n = cur[ku];
      const double lhs = next[ku].b1 * n.b2 - n.b1 * next[ku + 1].b2;
      const double rhs = (next[ku].a1 + next[ku].a2) - (next[ku + 1].a1 + next[ku + 1].a2);
      res.interior = std::max(res.interior, std::abs(lhs - rhs));
    }
    lat.residuals_.push_back(res);

    older = std::move(cur);
    cur = std::move(next);
    if (snapshot_levels.count(next_level)) lat.snapshots_[next_level] = cur;
  }
  lat.top_ = std::move(cur);
  return lat;
}

LimitPoint read_diagonal(const Diagonal& diag, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("ray parameter s must lie in [0,1]");
  if (diag.empty()) throw InputError("empty diagonal");
  const int level = static_cast<int>(diag.size()) - 1;
  LimitPoint p;
  p.s = s;
  if (level == 0) {
    p.A1 = diag[0].a1;
    p.A2 = diag[0].a2;
    p.B1 = diag[0].b1;
    p.B2 = diag[0].b2;
    return p;
  }
  const double x = s * level;
  int k0 = static_cast<int>(std::floor(x));
  k0 = std::clamp(k0, 0, level - 1);
  const double t = std::clamp(x - k0, 0.0, 1.0);
  const NnrrSite& u = diag[static_cast<std::size_t>(k0)];
  const NnrrSite& v = diag[static_cast<std::size_t>(k0) + 1];
  auto lerp = [t](double a, double b) { return t == 1.0 ? b : a + t * (b - a); };
  p.A1 = lerp(u.a1, v.a1);
  p.A2 = lerp(u.a2, v.a2);
  p.B1 = lerp(u.b1, v.b1);
  p.B2 = lerp(u.b2, v.b2);
  return p;
}

LimitPoint ray_limit(const NnrrLattice& lat, double s, bool extrapolate) {
  LimitPoint top = read_diagonal(lat.top(), s);
  if (!extrapolate) return top;
  const int m = lat.max_level();
  const int h = m / 2;
  const LimitPoint half = read_diagonal(lat.snapshot(h), s);
  // x_L = x + c / L  =>  x = (m x_m - h x_h) / (m - h)
  const double wm = static_cast<double>(m) / (m - h);
  const double wh = static_cast<double>(h) / (m - h);
  LimitPoint r;
  r.s = s;
  r.A1 = wm * top.A1 - wh * half.A1;
  r.A2 = wm * top.A2 - wh * half.A2;
  r.B1 = wm * top.B1 - wh * half.B1;
  r.B2 = wm * top.B2 - wh * half.B2;
  return r;
}

LimitCurve curve_from_lattice(const NnrrLattice& lat, const std::vector<double>& grid,
                              bool extrapolate) {
  LimitCurve c;
  c.method = Method::dis;
  c.points.reserve(grid.size());
  for (double s : grid) c.points.push_back(ray_limit(lat, s, extrapolate));
  c.meta["lattice_level"] = lat.max_level();
  c.meta["max_residual"] = lat.max_residual();
  c.meta["richardson"] = extrapolate ? 1.0 : 0.0;
  return c;
}

ResidualStats consistency_residuals(const NnrrLattice& lat) {
  ResidualStats st;
  double worst = -1.0;
  for (const auto& r : lat.residuals()) {
    st.max_axis = std::max(st.max_axis, r.axis);
    st.max_interior = std::max(st.max_interior, r.interior);
    const double w = std::max(r.axis, r.interior);
    if (w > worst) {
      worst = w;
      st.worst_level = r.level;
    }
  }
  return st;
}

}  // namespace angelesco
