#pragma once

// Limits from the reduced ODE system for C1 = A1/s^2, C2 = A2/(1-s)^2,
// integrated from both ends of [0,1] and spliced across the plateau.

#include <array>
#include <cstddef>
#include <vector>

#include "angelesco/system.hpp"

namespace angelesco {

struct OdeState {
  double s = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;
};

// Closed-form endpoint values. Bat0/Bat1 denote B2 - B1 at s = 0 and s = 1.
struct BoundaryPack {
  double C1at0 = 0.0, C2at0 = 0.0, C1at1 = 0.0, C2at1 = 0.0;
  double B1at0 = 0.0, B1at1 = 0.0, B2at0 = 0.0, B2at1 = 0.0;
  double Bat0 = 0.0, Bat1 = 0.0;
};

BoundaryPack boundary_values(const AngelescoSystem& sys);

// Limit point at s = 0 or s = 1 from the closed forms.
LimitPoint endpoint_limits(const BoundaryPack& pack, int side);

// (C1', C2') from the 2x2 linear system; 0 < s < 1.
std::array<double, 2> rhs(double s, double C1, double C2);

// (B1', B2') in the regularized form, given C and C'.
std::array<double, 2> b_derivatives(double s, double C1, double C2, double dC1, double dC2);

enum class Side { left = 0, right = 1 };

// First-order Taylor step away from the singular endpoint, to s = eps
// (left) or s = 1 - eps (right).
OdeState startup(Side side, const BoundaryPack& pack, double eps);

struct OdeSettings {
  int steps_per_unit = 10000;
  double eps = 1e-6;
};

struct OdeBranch {
  Side side = Side::left;
  std::vector<OdeState> states;  // ordered by integration direction; states[0] is the endpoint
  std::vector<OdeState> slopes;  // derivatives at each state (s field unused)
  double max_b2_drift = 0.0;     // max |B2_integrated - (B1 + sqrt(C1 + C2))|

  double s_min() const;
  double s_max() const;
  bool covers(double s) const { return s >= s_min() && s <= s_max(); }
  // Cubic Hermite interpolation between steps.
  OdeState at(double s) const;
};

// Fixed-step RK4 on (C1, C2, B1, B2) from the endpoint to `stop`.
OdeBranch integrate_branch(const BoundaryPack& pack, Side side, double stop,
                           const OdeSettings& settings = {});

LimitPoint to_limits(const OdeState& st);

// Forward branch on [0, c1], backward on [c2, 1], forward value at c1 on the
// plateau in between. Continuity mismatches go to meta.
LimitCurve assemble_curve(const OdeBranch& forward, const OdeBranch& backward, double c1,
                          double c2, const std::vector<double>& grid);

// Branch values only on grid points it covers.
LimitCurve branch_curve(const OdeBranch& branch, const std::vector<double>& grid);

}  // namespace angelesco
