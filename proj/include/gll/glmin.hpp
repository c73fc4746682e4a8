#pragma once

#include <vector>

#include "gll/solver.hpp"

namespace gll {

// Ground energy of b*|cov grad u|^2 - |u|^2 + 1/2|u|^4 on the Dirichlet
// square K_R (counts sites per axis). Best over cfg.restarts seeded starts.
MinResult ground_energy_2d(double b, double R, int counts, const SolverConfig& cfg);

// Same functional on the Dirichlet cube of side R.
MinResult ground_energy_3d(double b, double R, int counts, const SolverConfig& cfg);

// Minimum of the 0-homogeneous quotient
//   (b*|cov grad u|^2 - |u|^2) / sqrt(integral |u|^4)
// over the Dirichlet cube; the returned field has unit L^4 mass.
MinResult l4_quotient_minimum(double b, double R, int counts, const SolverConfig& cfg);

// counts(R): round(R / target_spacing) sites per unit, clamped.
struct GridRule {
  double target_spacing = 0.25;
  int min_counts = 15;
  int max_counts = 512;
  int counts_for(double extent, Bc bc) const;
};

struct GEstimate {
  double b = 0.0;
  std::vector<std::pair<double, double>> values;  // (R, value/R^2), R ascending
  double extrapolated_g = 0.0;                    // clamped to [-1/2, 0]
  double fitted_C = 0.0;                          // from the g + C/R model
  double fit_residual = 0.0;                      // max |data - model| over R
  bool monotone = false;                          // value/R^2 decreasing in R
  std::vector<MinResult> runs;
};

// Fit value(R)/R^2 against g + C/R over an increasing R list (>= 3 entries).
GEstimate estimate_g(double b, const std::vector<double>& R_list, const GridRule& rule,
                     const SolverConfig& cfg);

namespace detail {
// Best-of-restarts BB minimization of the b-weighted GL functional on any
// grid/link pair; shared by the Dirichlet and magnetic-periodic solvers.
// Warm starts (used before the Gaussian draws) count against the restart
// budget; dimensional-reduction warm starts keep the 3D solves tractable.
MinResult minimize_gl_energy(double b, const Grid& grid, const GaugeLinks& links,
                             const SolverConfig& cfg, double R, double L,
                             std::vector<ComplexField> warm_starts = {});
}  // namespace detail

}  // namespace gll
