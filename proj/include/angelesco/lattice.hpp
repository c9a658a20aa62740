#pragma once

// Nearest-neighbour recurrence coefficients on the lattice Z_+^2, filled
// diagonal by diagonal from the axis data through the compatibility
// conditions of the discrete integrable system.

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "angelesco/scalar.hpp"
#include "angelesco/system.hpp"

namespace angelesco {

struct NnrrSite {
  double b1 = 0.0;
  double b2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

// One diagonal n1 + n2 = level, indexed by n1 = 0..level.
using Diagonal = std::vector<NnrrSite>;

struct LevelResidual {
  int level = 0;
  double axis = 0.0;      // |propagated b - axis data b| at the two axis sites
  double interior = 0.0;  // max |Nabla2A residual| over the stored sites
};

class NnrrLattice {
 public:
  int max_level() const { return max_level_; }
  const Diagonal& top() const { return top_; }

  bool has_snapshot(int level) const { return snapshots_.count(level) != 0; }
  const Diagonal& snapshot(int level) const;  // throws InputError if missing
  const std::map<int, Diagonal>& snapshots() const { return snapshots_; }

  const std::vector<LevelResidual>& residuals() const { return residuals_; }
  double max_residual() const;

 private:
  friend NnrrLattice solve_lattice(const AngelescoSystem&, int, const std::set<int>&);
  int max_level_ = 0;
  Diagonal top_;
  std::map<int, Diagonal> snapshots_;
  std::vector<LevelResidual> residuals_;
};

// Fills levels 0..m. Snapshot levels outside [0, m] are ignored.
NnrrLattice solve_lattice(const AngelescoSystem& sys, int m, const std::set<int>& snapshot_levels);

// Reads the diagonal at s (linear interpolation for off-grid s*level).
LimitPoint read_diagonal(const Diagonal& diag, double s);

// Top-diagonal value at s. With `extrapolate`, combines level m with the
// snapshot at m/2 to cancel the O(1/m) term.
LimitPoint ray_limit(const NnrrLattice& lat, double s, bool extrapolate = false);

LimitCurve curve_from_lattice(const NnrrLattice& lat, const std::vector<double>& grid,
                              bool extrapolate = false);

struct ResidualStats {
  double max_axis = 0.0;
  double max_interior = 0.0;
  int worst_level = 0;
};

ResidualStats consistency_residuals(const NnrrLattice& lat);

}  // namespace angelesco
