#pragma once

// Limits from the genus-0 parametrization of the three-sheeted Riemann
// surface: support determination for every ray and the residue formulas.

#include <limits>
#include <vector>

#include "angelesco/system.hpp"

namespace angelesco {

struct SurfaceParams {
  double alpha = 1.0;
  double beta = 0.0;
  double u = 2.0;
  double tau0 = 2.0;
  double tau1 = -1.0;
  double tau2 = 1.0;
  double gamma = 0.0;  // 2 - u
  // tau_i - gamma without cancellation; NaN means "use the difference".
  double gap1 = std::numeric_limits<double>::quiet_NaN();
  double gap2 = std::numeric_limits<double>::quiet_NaN();
};

struct PlateauInfo {
  double c1 = 0.5;
  double c2 = 0.5;
  LimitPoint plateau;              // constant limits on [c1, c2], star frame
  double s_alpha_direct = 0.5;     // threshold of [-alpha,0],[0,1]
  double s_alpha_reflected = 0.5;  // threshold of the reflected star config, in its own frame
};

// u (2-u)^3 / (2u-1)^3
double calU(double u);
// tau^2 (tau + u - 2) / ((2u-1) tau - u)
double calR(double u, double tau);

// Unique u in (1,2) with calU(u) = beta (1+alpha) / (alpha+beta); u = 2 when beta = 0.
double solve_u(double alpha, double beta);

// Root tau0 > 1 of calR(u, tau) = 1 + alpha.
double solve_tau(double u, double alpha);

struct TauPair {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double gap1 = 0.0;  // tau1 - (2 - u)
  double gap2 = 0.0;  // tau2 - (2 - u)
};

TauPair tau_roots(double u, double tau0);

SurfaceParams make_surface_params(double alpha, double u, double tau0);
SurfaceParams surface_params(const StarConfig& sc);

// Star-frame (A1, A2, B1, B2); the s field is left at 0.
LimitPoint residue_limits(const SurfaceParams& p);

double mapA(double u, double tau);
double mapB(double u, double tau);
double theta(double u, double tau);

struct ThresholdSolution {
  double theta = 0.0;
  double s = 0.5;
  double tau = 2.0;
};

ThresholdSolution solve_s_alpha(double alpha);

struct BetaSolution {
  double beta = 0.0;
  double u = 2.0;
  double tau = 2.0;
};

// For s in (s_alpha, 1): supports [-alpha, 0], [beta_s, 1] on [-alpha,0],[0,1].
BetaSolution solve_beta_s(double alpha, double s);

PlateauInfo plateau_bounds(const StarConfig& sc);

// Full pipeline in user coordinates; s in [0,1].
LimitPoint limits_at(const AngelescoSystem& sys, double s);
LimitPoint limits_at(const AngelescoSystem& sys, double s, const PlateauInfo& plateau);

// Plateau bounds in user ray parameters (unchanged by the affine map).
PlateauInfo plateau_for(const AngelescoSystem& sys);

LimitCurve surface_curve(const AngelescoSystem& sys, const std::vector<double>& grid);

}  // namespace angelesco
