#pragma once

#include <complex>
#include <vector>

#include "gll/glmin.hpp"
#include "gll/spectral.hpp"

namespace gll {

// Rank-4 interaction tensor T[m][m'][k][k'] = integral of
// conj(f_m) conj(f_m') f_k f_k' plus the basis power sums; precomputed once
// per basis so each descent step costs O(n^4) instead of O(sites).
struct AbrikosovTensor {
  int n = 0;
  std::vector<cxd> t;  // flattened n^4, index ((m*n + m2)*n + k)*n + k2
  double quartic(const std::vector<cxd>& c) const;             // integral |v|^4
  void grad(const std::vector<cxd>& c, std::vector<cxd>& g) const;  // d/d conj(c)
};

AbrikosovTensor interaction_tensor(const LLLBasis& basis);

// 1/2 |v|^4 - |v|^2 site sums for v = sum c_m f_m, evaluated in field space
// (independent of the tensor path). kinetic_raw reports |v|^2, the
// eigenvalue-one identity for lowest-level fields; b is 0.
EnergyBreakdown abrikosov_energy(const std::vector<cxd>& coefficients, const LLLBasis& basis);

struct AbrikosovResult {
  std::vector<cxd> coefficients;
  double value = 0.0;               // c(R) estimate
  double stationarity_defect = 0.0; // sup-norm of the coefficient gradient
  double pairing_defect = 0.0;      // |integral |v|^4 - integral |v|^2|
  int n = 0;
  double R = 0.0;
  bool converged = false;
  double value_spread = 0.0;        // best-to-worst spread over restarts
};

// min over the lowest-level coefficients of the quartic-minus-mass energy at
// R = sqrt(2 pi n); best of cfg.restarts random starts (ties to lowest seed).
AbrikosovResult abrikosov_minimum(const LLLBasis& basis, const SolverConfig& cfg);

struct AbrikosovEstimate {
  std::vector<int> n_list;
  std::vector<double> R_list;
  std::vector<double> c_over_R2;
  double extrapolated_EAb = 0.0;  // tail value of c(R)/R^2
  double cross_check_EAb = 0.0;   // from the g(b)/(b-1)^2 fit
  std::vector<double> successive_differences;
};

// Both limits of the Abrikosov constant: the c(R)/R^2 tail over n_list and
// the least-squares fit of ghat(b) against E*(1-b)^2 over b_list.
AbrikosovEstimate abrikosov_constant_estimate(const std::vector<int>& n_list, int counts,
                                              const std::vector<double>& b_list,
                                              const std::vector<double>& g_R_list,
                                              const GridRule& g_rule, const SolverConfig& cfg);

}  // namespace gll
