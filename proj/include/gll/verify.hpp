#pragma once

#include <map>
#include <string>
#include <vector>

#include "gll/abrikosov.hpp"
#include "gll/glmin.hpp"

namespace gll {

// One checked relation: holds iff lhs <= rhs + slack_used. `details` carries
// every number that went into the check (inputs, fitted constants, error
// bars) so a report is reproducible from its own record.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack_used = 0.0;
  bool holds = false;
  std::map<std::string, double> details;
  std::string note;
};

// Slack policy: ten times the summed solver tolerances (scaled by the energy
// magnitudes involved) plus the g-fit error bar wherever ghat enters.
double solver_slack(const std::vector<const MinResult*>& results);

struct VerifyConfig {
  SolverConfig solver;
  GridRule rule_2d{0.125, 15, 512};
  GridRule rule_3d{0.25, 15, 160};
  std::vector<double> g_R_list{8.0, 12.0, 16.0};
};

// R m0 <= M0 <= (R-2) m0 + C : left asserted, right fitted.
InequalityReport check_lem1(double b, double R, const VerifyConfig& cfg);

// ghat <= M0/R^3 <= (R-2)/R ghat + C/R.
InequalityReport check_lem2(double b, double R, const VerifyConfig& cfg);

// |E + 1/2 integral |u|^4| / (1 + |E|) <= 1e-6 at converged 3D minimizers.
InequalityReport check_virial(const MinResult& min_result);

// -2R^2(R-2) ghat - CR^2 <= integral |v|^4 <= -2R^3 ghat.
InequalityReport check_L4_bounds(double b, double R, const VerifyConfig& cfg);

// Quotient lower bound -R^{3/2} sqrt(-2 ghat) per R; upper C fitted; the gap
// to the bound must shrink along R_list; tail consistency with ghat.
InequalityReport check_nf(double b, const std::vector<double>& R_list, const VerifyConfig& cfg);

// -1/2 (1-b)^2 <= ghat <= 0, ghat(0) = -1/2, monotone over b_list.
InequalityReport check_g_bounds(const std::vector<double>& b_list, const VerifyConfig& cfg);

// m0(b, R) <= (1-b)^2 c(R) + C (1-b) R at R = sqrt(2 pi n).
InequalityReport check_ka(double b, int n, int counts, const VerifyConfig& cfg);

}  // namespace gll
