#pragma once

// Cross-method comparisons and consistency diagnostics on limit curves.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "angelesco/surface.hpp"
#include "angelesco/system.hpp"

namespace angelesco {

// Index order A1, A2, B1, B2 for every per-function array below.
inline constexpr std::array<const char*, 4> kFunctionNames{"A1", "A2", "B1", "B2"};

struct ComparisonReport {
  std::array<double, 4> max_abs{};
  std::array<double, 4> mean_abs{};
  std::size_t compared = 0;
  std::size_t excluded = 0;
  bool resampled = false;

  double worst() const;
  bool passes(double tolerance) const { return worst() <= tolerance; }
};

struct ExclusionZone {
  double c1 = 0.5;
  double c2 = 0.5;
  double margin = 0.0;  // points closer than margin to c1 or c2 are skipped

  bool excludes(double s) const;
};

// Linear interpolation of a curve at s (clamped to its range).
LimitPoint sample(const LimitCurve& c, double s);

// `b` is resampled onto the grid of `a` when the grids differ.
ComparisonReport compare(const LimitCurve& a, const LimitCurve& b,
                         std::optional<ExclusionZone> zone = std::nullopt);

struct ResidualReport {
  std::array<double, 4> max_rel{};  // relations ode3, ode4, ode1, ode2
  std::size_t evaluated = 0;
  double h = 0.0;

  double worst() const;
};

// Central differences with step h on a uniformly spaced curve; h must be a
// multiple of the grid spacing. Points within `neighborhood` of 0, c1, c2, 1
// are skipped.
ResidualReport ode_residual_d2(const LimitCurve& c, double h, double c1, double c2,
                               double neighborhood = 0.01);

struct IdentityReport {
  double max_identity = 0.0;   // |(B2-B1)^2 - A1/s^2 - A2/(1-s)^2| off the plateau
  double min_separation = 0.0; // min (B2 - B1)
  double a1_at_0 = 0.0;        // |A1(0)| when s = 0 is on the grid
  double a2_at_1 = 0.0;        // |A2(1)| when s = 1 is on the grid
  std::size_t evaluated = 0;

  bool passes(double tolerance) const {
    return max_identity <= tolerance && min_separation > 0.0 && a1_at_0 == 0.0 && a2_at_1 == 0.0;
  }
};

IdentityReport identity_checks(const LimitCurve& c, const PlateauInfo& plateau);

struct ConvergenceRow {
  int level = 0;
  std::array<double, 4> error{};       // |dis(m) - surface|
  std::array<double, 4> richardson{};  // |richardson(m, m/2) - surface|

  double max_error() const;
  double max_richardson() const;
};

std::vector<ConvergenceRow> convergence_study(const AngelescoSystem& sys, double s,
                                              const std::vector<int>& levels);

std::array<double, 4> as_array(const LimitPoint& p);

}  // namespace angelesco
