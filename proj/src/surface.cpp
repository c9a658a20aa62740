#include "angelesco/surface.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "angelesco/errors.hpp"
#include "angelesco/ode.hpp"

namespace angelesco {

namespace {

std::string describe(const char* what, double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (" << a << ", " << b << ")";
  return os.str();
}

// Bracketed bisection down to adjacent doubles.
double bisect(const std::function<double(double)>& f, double lo, double hi, const char* what) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0) || std::isnan(flo) || std::isnan(fhi))
    throw NumericalFailure(describe(what, lo, hi) + ": bracket has no sign change");
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

// Counts sign changes of f on `samples` evenly spaced points of [lo, hi].
int sign_changes(const std::function<double(double)>& f, double lo, double hi, int samples) {
  int changes = 0;
  double prev = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    const double v = f(x);
    if (v != 0.0 && prev != 0.0 && ((v > 0.0) != (prev > 0.0))) ++changes;
    if (v != 0.0) prev = v;
  }
  return changes;
}

constexpr int kScanSamples = 48;

}  // namespace

double calU(double u) {
  const double t = 2.0 - u, d = 2.0 * u - 1.0;
  return u * t * t * t / (d * d * d);
}

double calR(double u, double tau) {
  return tau * tau * (tau + u - 2.0) / ((2.0 * u - 1.0) * tau - u);
}

double solve_u(double alpha, double beta) {
  if (!(alpha > 0.0)) throw InputError("solve_u needs alpha > 0");
  if (beta == 0.0) return 2.0;
  const double target = beta * (1.0 + alpha) / (alpha + beta);
  if (!(target > 0.0 && target < 1.0)) throw InputError("solve_u: target outside (0,1)");
  // calU decreases strictly from 1 to 0 on [1,2].
  return bisect([target](double u) { return calU(u) - target; }, 1.0, 2.0, "solve_u");
}

double solve_tau(double u, double alpha) {
  if (!(u >= 1.0 && u <= 2.0)) throw InputError("solve_tau needs u in [1,2]");
  if (!(alpha > 0.0)) throw InputError("solve_tau needs alpha > 0");
  const double target = 1.0 + alpha;
  // R_u(1) = 1 for every u; at u = 1 the formula is 0/0 there.
  auto f = [u, target](double tau) { return tau == 1.0 ? 1.0 - target : calR(u, tau) - target; };
  double hi = 2.0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e150) throw NumericalFailure(describe("solve_tau found no sign change for", u, alpha));
  }
  const int changes = sign_changes(f, 1.0, hi, kScanSamples);
  if (changes != 1)
    throw NumericalFailure(describe("solve_tau: multiple roots of R_u(tau) = 1 + alpha for", u, alpha));
  return bisect(f, 1.0, hi, "solve_tau");
}

TauPair tau_roots(double u, double tau0) {
  const double sum = -(u + tau0 - 2.0);
  const double prod = -u * tau0 * (u + tau0 - 2.0) / (2.0 * u * tau0 - u - tau0);
  const double disc = sum * sum - 4.0 * prod;
  if (disc < 0.0) throw NumericalFailure(describe("tau_roots: negative discriminant for", u, tau0));
  const double q = 0.5 * (sum + std::copysign(std::sqrt(disc), sum));
  if (q == 0.0) throw NumericalFailure(describe("tau_roots: degenerate quadratic for", u, tau0));
  const double r1 = q, r2 = prod / q;
  TauPair t{std::min(r1, r2), std::max(r1, r2), 0.0, 0.0};
  // With tau = gamma + d the quadratic becomes
  //   d^2 + (gamma + tau0) d - 2 tau0^2 (u-1)^2 / (2 u tau0 - u - tau0) = 0,
  // whose small root tau2 - gamma is O((u-1)^2) as u -> 1.
  const double v = u - 1.0, g = 2.0 - u;
  const double b = g + tau0;
  const double c = -2.0 * tau0 * tau0 * v * v / (2.0 * u * tau0 - u - tau0);
  const double big = -0.5 * (b + std::sqrt(b * b - 4.0 * c));
  t.gap1 = big;
  t.gap2 = big != 0.0 ? c / big : 0.0;
  return t;
}

SurfaceParams make_surface_params(double alpha, double u, double tau0) {
  SurfaceParams p;
  p.alpha = alpha;
  p.u = u;
  p.tau0 = tau0;
  p.gamma = 2.0 - u;
  const TauPair t = tau_roots(u, tau0);
  p.tau1 = t.tau1;
  p.tau2 = t.tau2;
  p.gap1 = t.gap1;
  p.gap2 = t.gap2;
  p.beta = (u == 2.0) ? 0.0 : mapB(u, tau0);
  if (!(p.tau1 < 0.0 && 0.0 < p.tau2 && p.tau2 < p.tau0))
    throw NumericalFailure(describe("surface parameters violate tau1 < 0 < tau2 < tau0 for (u, tau0) =", u, tau0));
  return p;
}

SurfaceParams surface_params(const StarConfig& sc) {
  validate(sc);
  const double u = solve_u(sc.alpha, sc.beta);
  SurfaceParams p = make_surface_params(sc.alpha, u, solve_tau(u, sc.alpha));
  p.beta = sc.beta;
  return p;
}

LimitPoint residue_limits(const SurfaceParams& p) {
  const double a = p.alpha, g = p.gamma, t0 = p.tau0;
  if (p.tau1 == p.tau2 || t0 == p.tau1 || t0 == p.tau2)
    throw NumericalFailure("residue_limits: coincident tau parameters");

  // Coefficients of the pole at tau_i; the other index enters as tau_j.
  auto one = [&](double ti, double tj, double gap, double& A, double& B) {
    const double d0i = t0 - ti, d0j = t0 - tj;
    if (std::isnan(gap)) gap = ti - g;
    const double C = -a * ti * ti * gap / (d0i * d0i * (ti - tj));
    A = -a * t0 * t0 * C * (t0 - g) / (d0i * d0i * d0j);
    const double D = t0 * t0 * tj + 2.0 * t0 * t0 * ti - 3.0 * t0 * ti * tj - g * t0 * t0 -
                     g * ti * t0 + 2.0 * g * ti * tj;
    B = a * t0 * D / (d0i * d0i * d0j * d0j);
  };
  LimitPoint r;
  one(p.tau1, p.tau2, p.gap1, r.A1, r.B1);
  one(p.tau2, p.tau1, p.gap2, r.A2, r.B2);
  return r;
}

double mapA(double u, double tau) { return calR(u, tau) - 1.0; }

double mapB(double u, double tau) {
  const double A = mapA(u, tau);
  const double U = calU(u);
  return A * U / (1.0 + A - U);
}

double theta(double u, double tau) {
  const double w = 2.0 * u * tau - u - tau;
  const double rad = (2.0 + w) / (w * (u + tau) * (u + tau - 2.0));
  if (!(rad >= 0.0)) throw NumericalFailure(describe("theta: negative radicand at", u, tau));
  return (tau - u) * std::sqrt(rad);
}

ThresholdSolution solve_s_alpha(double alpha) {
  if (!(alpha > 0.0)) throw InputError("solve_s_alpha needs alpha > 0");
  ThresholdSolution r;
  r.tau = solve_tau(2.0, alpha);
  r.theta = theta(2.0, r.tau);
  r.s = 0.5 * (1.0 + r.theta);
  return r;
}

BetaSolution solve_beta_s(double alpha, double s) {
  if (!(alpha > 0.0)) throw InputError("solve_beta_s needs alpha > 0");
  if (!(s > 0.0 && s < 1.0)) throw InputError("solve_beta_s needs s in (0,1)");
  const double th = 2.0 * s - 1.0;
  auto g = [alpha, th](double u) { return theta(u, solve_tau(u, alpha)) - th; };
  const double at_threshold = g(2.0);
  if (std::abs(at_threshold) <= 1e-12) return BetaSolution{0.0, 2.0, solve_tau(2.0, alpha)};
  if (at_threshold > 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "solve_beta_s: s = " << s << " does not exceed s_alpha for alpha = " << alpha;
    throw NumericalFailure(os.str());
  }
  if (sign_changes(g, 1.0, 2.0, kScanSamples) != 1)
    throw NumericalFailure(describe("solve_beta_s: outer bracket is not monotone for (alpha, s) =", alpha, s));
  BetaSolution r;
  r.u = bisect(g, 1.0, 2.0, "solve_beta_s");
  r.tau = solve_tau(r.u, alpha);
  r.beta = mapB(r.u, r.tau);
  return r;
}

PlateauInfo plateau_bounds(const StarConfig& sc) {
  validate(sc);
  PlateauInfo info;
  const double a_hat = (1.0 - sc.beta) / (sc.alpha + sc.beta);
  const double b_hat = sc.beta / (sc.alpha + sc.beta);
  info.s_alpha_direct = solve_s_alpha(sc.alpha).s;
  info.s_alpha_reflected = solve_s_alpha(a_hat).s;

  const SurfaceParams p = surface_params(sc);
  if (sc.beta == 0.0) {
    info.c1 = info.c2 = info.s_alpha_direct;
  } else {
    // (u, tau0) of the full supports is the point of the touching problem
    // whose pushed support starts at beta; its direction is c2.
    info.c2 = 0.5 * (1.0 + theta(p.u, p.tau0));
    const SurfaceParams q = surface_params(StarConfig{a_hat, b_hat});
    info.c1 = 1.0 - 0.5 * (1.0 + theta(q.u, q.tau0));
  }
  if (!(info.c1 > 0.0 && info.c1 <= info.c2 && info.c2 < 1.0))
    throw NumericalFailure("plateau bounds out of order");
  info.plateau = residue_limits(p);
  return info;
}

PlateauInfo plateau_for(const AngelescoSystem& sys) {
  const auto [sc, map] = star_normalize(sys);
  PlateauInfo info = plateau_bounds(sc);
  info.plateau = pushforward_limits(info.plateau, map, false);
  return info;
}

LimitPoint limits_at(const AngelescoSystem& sys, double s, const PlateauInfo& plateau) {
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("ray parameter s must lie in [0,1]");
  if (s == 0.0 || s == 1.0) return endpoint_limits(boundary_values(sys), s == 0.0 ? 0 : 1);

  if (s >= plateau.c1 && s <= plateau.c2) {
    LimitPoint p = plateau.plateau;
    p.s = s;
    return p;
  }

  const auto [sc, map] = star_normalize(sys);
  LimitPoint star;
  if (s > plateau.c2) {
    const BetaSolution b = solve_beta_s(sc.alpha, s);
    star = residue_limits(make_surface_params(sc.alpha, b.u, b.tau));
    star.s = s;
  } else {
    // Reflected star frame: [-a_hat, 0], [b_hat, 1] with y = -(alpha+beta) z_hat + beta.
    const double a_hat = (1.0 - sc.beta) / (sc.alpha + sc.beta);
    const BetaSolution b = solve_beta_s(a_hat, 1.0 - s);
    LimitPoint refl = residue_limits(make_surface_params(a_hat, b.u, b.tau));
    refl.s = 1.0 - s;
    star = pushforward_limits(refl, AffineMap{-(sc.alpha + sc.beta), sc.beta}, true);
  }
  LimitPoint out = pushforward_limits(star, map, false);
  out.s = s;
  return out;
}

LimitPoint limits_at(const AngelescoSystem& sys, double s) {
  return limits_at(sys, s, plateau_for(sys));
}

LimitCurve surface_curve(const AngelescoSystem& sys, const std::vector<double>& grid) {
  const PlateauInfo plateau = plateau_for(sys);
  LimitCurve c;
  c.method = Method::surface;
  c.points.reserve(grid.size());
  for (double s : grid) c.points.push_back(limits_at(sys, s, plateau));
  c.meta["c1"] = plateau.c1;
  c.meta["c2"] = plateau.c2;
  return c;
}

}  // namespace angelesco
