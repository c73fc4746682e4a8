#pragma once

#include "gll/spectral.hpp"
#include "gll/verify.hpp"

namespace gll {

// Reduced parameters of the frozen-field periodic problem: b plays the
// applied-field ratio, the box is R x R x L with R^2/2pi flux quanta.
struct ReducedParams {
  double b = 0.9;
  double R = 0.0;
  double L = 0.0;
};

// Minimize b*|cov grad u|^2 - |u|^2 + 1/2|u|^4 on the magnetic-periodic box.
// counts = {N, N, Nz}. Reports the GL residual and max |u| diagnostics.
MinResult solve_periodic_gl(const ReducedParams& params, const std::array<int, 3>& counts,
                            const SolverConfig& cfg);

struct CellRecord {
  Box box;
  double mean_sq = 0.0;    // mean |u|^2 over the box
  double mean_quartic = 0.0;  // mean |u|^4
  EnergyBreakdown local;
};

struct CellStats {
  std::vector<CellRecord> cells;
  double global_mean_sq = 0.0;
  double global_mean_quartic = 0.0;
  double max_x3_variation = 0.0;  // sup over sites of |u| variation along x3
};

// Per-box density statistics over a tiles[0] x tiles[1] x tiles[2] tiling.
CellStats cell_statistics(const MinResult& min_result, const std::array<int, 3>& tiles);

struct Gl3dConfig {
  SolverConfig solver;
  int counts_xy = 48;
  int counts_z = 24;
  int eab_counts = 48;                 // basis grid for the E_Ab reference
  std::vector<int> eab_n_list{1, 2, 3, 4, 5, 6};
  std::vector<double> g_b_list{0.85, 0.9, 0.95};
  std::vector<double> g_R_list{8.0, 12.0, 16.0};
  GridRule g_rule{0.125, 15, 512};
  int n_quanta = 4;
};

// rho4(b) = mean|u|^4 / (-2 EAb (1-b)^2) in [0.8, 1.2], |rho4 - 1|
// non-increasing toward b -> 1.
InequalityReport check_thm_l4(const std::vector<double>& b_list, const Gl3dConfig& cfg);

// rho2(b) = mean|u|^2 / (-2 EAb (1-b)), same window and trend, plus the
// lowest-level proximity ||u - P u|| <= C sqrt(1-b) ||u||.
InequalityReport check_thm_l2(const std::vector<double>& b_list, const Gl3dConfig& cfg);

}  // namespace gll
