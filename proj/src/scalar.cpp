#include "angelesco/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "angelesco/errors.hpp"

namespace angelesco {

ScalarRecurrence scalar_recurrence(WeightKind weight, const Interval& iv, std::size_t n) {
  validate(iv);
  if (n == 0) throw InputError("scalar_recurrence needs n >= 1");

  ScalarRecurrence rec;
  rec.interval = iv;
  rec.weight = weight;
  rec.b.assign(n, iv.mid());
  rec.a.resize(n);

  const double r = iv.length() / 4.0;
  const double half = iv.length() / 2.0;
  for (std::size_t k = 0; k < n; ++k) {
    switch (weight) {
      case WeightKind::chebyshev1:
        rec.a[k] = (k == 0) ? 2.0 * r * r : r * r;
        break;
      case WeightKind::chebyshev2:
        rec.a[k] = r * r;
        break;
      case WeightKind::uniform: {
        const double j = static_cast<double>(k + 1);
        rec.a[k] = half * half * j * j / (4.0 * j * j - 1.0);
        break;
      }
    }
  }
  return rec;
}

namespace {

// Clenshaw-Curtis on [-1,1] with n+1 points cos(j pi / n); weights sum to 2.
void clenshaw_curtis(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n + 1, 0.0);
  w.assign(n + 1, 0.0);
  const double pi = std::numbers::pi;
  for (std::size_t j = 0; j <= n; ++j) x[j] = std::cos(pi * static_cast<double>(j) / n);

  const double nn = static_cast<double>(n);
  const bool even = (n % 2 == 0);
  w[0] = w[n] = even ? 1.0 / (nn * nn - 1.0) : 1.0 / (nn * nn);
  for (std::size_t j = 1; j < n; ++j) {
    const double theta = pi * static_cast<double>(j) / nn;
    double v = 1.0;
    const std::size_t kmax = even ? n / 2 - 1 : (n - 1) / 2;
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double kk = static_cast<double>(k);
      v -= 2.0 * std::cos(2.0 * kk * theta) / (4.0 * kk * kk - 1.0);
    }
    if (even) v -= std::cos(nn * theta) / (nn * nn - 1.0);
    w[j] = 2.0 * v / nn;
  }
}

}  // namespace

QuadratureRule gauss_nodes(WeightKind weight, const Interval& iv, std::size_t n) {
  validate(iv);
  if (n == 0) throw InputError("quadrature needs at least one node");
  QuadratureRule rule;
  const double pi = std::numbers::pi;
  const double mid = iv.mid();
  const double half = iv.length() / 2.0;
  const double nn = static_cast<double>(n);

  switch (weight) {
    case WeightKind::chebyshev1:
      for (std::size_t i = 1; i <= n; ++i) {
        const double t = std::cos((2.0 * static_cast<double>(i) - 1.0) * pi / (2.0 * nn));
        rule.nodes.push_back(mid + half * t);
        rule.weights.push_back(1.0 / nn);
      }
      break;
    case WeightKind::chebyshev2:
      for (std::size_t i = 1; i <= n; ++i) {
        const double th = static_cast<double>(i) * pi / (nn + 1.0);
        const double sn = std::sin(th);
        rule.nodes.push_back(mid + half * std::cos(th));
        rule.weights.push_back(2.0 / (nn + 1.0) * sn * sn);
      }
      break;
    case WeightKind::uniform: {
      if (n == 1) {
        rule.nodes = {mid};
        rule.weights = {1.0};
        break;
      }
      std::vector<double> x, w;
      clenshaw_curtis(n - 1, x, w);
      for (std::size_t i = 0; i < n; ++i) {
        rule.nodes.push_back(mid + half * x[i]);
        rule.weights.push_back(0.5 * w[i]);
      }
      break;
    }
  }
  return rule;
}

std::size_t nodes_for_degree(WeightKind weight, std::size_t degree) {
  if (weight == WeightKind::uniform) return degree + 1;
  return degree / 2 + 1;
}

MixedRatios mixed_ratios(const ScalarRecurrence& src, const QuadratureRule& rule,
                         std::size_t m) {
  if (src.b.size() < m + 1 || (m > 0 && src.a.size() < m))
    throw InputError("mixed_ratios: source recurrence too short");

  const std::size_t n = rule.nodes.size();
  std::vector<double> prev(n, 0.0), cur(n, 1.0), next(n);
  MixedRatios out;
  out.ratio.resize(m + 1);
  out.log_h.resize(m + 2);
  out.log_h[0] = 0.0;
  double log_scale = 0.0;  // cur holds p_k / exp(log_scale)

  auto weighted_sum = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += rule.weights[i] * v[i];
    return acc;
  };

  double h_cur = weighted_sum(cur);
  for (std::size_t k = 0; k <= m; ++k) {
    const double ak = (k == 0) ? 0.0 : src.a[k - 1];
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = (rule.nodes[i] - src.b[k]) * cur[i] - ak * prev[i];
      peak = std::max(peak, std::abs(next[i]));
    }
    const double h_next = weighted_sum(next);
    if (h_cur == 0.0 || h_next == 0.0 || !std::isfinite(h_next))
      throw NumericalFailure("mixed_ratios: vanishing mixed moment at k = " + std::to_string(k));
    out.ratio[k] = h_next / h_cur;
    out.log_h[k + 1] = log_scale + std::log(std::abs(h_next));

    // Renormalize p_k and p_{k+1} by the same factor.
    if (peak == 0.0) throw NumericalFailure("mixed_ratios: polynomial vanished on all nodes");
    const double inv = 1.0 / peak;
    for (std::size_t i = 0; i < n; ++i) {
      prev[i] = cur[i] * inv;
      cur[i] = next[i] * inv;
    }
    log_scale += std::log(peak);
    h_cur = h_next * inv;
  }
  return out;
}

MixedRatios mixed_ratios(const ScalarRecurrence& src, WeightKind dst_weight,
                         const Interval& dst_iv, std::size_t m) {
  validate(dst_iv);
  const bool disjoint = src.interval.hi <= dst_iv.lo || dst_iv.hi <= src.interval.lo;
  if (!disjoint) throw InputError("mixed_ratios: source and destination intervals overlap");
  // p_{m+1} must be integrated exactly.
  const std::size_t nodes = nodes_for_degree(dst_weight, m + 1);
  return mixed_ratios(src, gauss_nodes(dst_weight, dst_iv, nodes), m);
}

AxisData axis_data(const AngelescoSystem& sys, int axis, std::size_t m) {
  validate(sys);
  if (axis != 1 && axis != 2) throw InputError("axis must be 1 or 2");
  if (m == 0) throw InputError("axis_data needs m >= 1");

  const Interval& own_iv = (axis == 1) ? sys.i1 : sys.i2;
  const Interval& other_iv = (axis == 1) ? sys.i2 : sys.i1;
  const WeightKind own_w = (axis == 1) ? sys.w1 : sys.w2;
  const WeightKind other_w = (axis == 1) ? sys.w2 : sys.w1;

  const ScalarRecurrence rec = scalar_recurrence(own_w, own_iv, m + 1);
  const MixedRatios mr = mixed_ratios(rec, other_w, other_iv, m);

  AxisData d;
  d.own_b.assign(rec.b.begin(), rec.b.begin() + static_cast<std::ptrdiff_t>(m + 1));
  d.own_a.resize(m + 1);
  d.own_a[0] = 0.0;
  for (std::size_t k = 1; k <= m; ++k) d.own_a[k] = rec.a[k - 1];
  d.cross_b.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k) d.cross_b[k] = rec.b[k] + mr.ratio[k];
  return d;
}

}  // namespace angelesco
