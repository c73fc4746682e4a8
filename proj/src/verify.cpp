#include "gll/verify.hpp"

#include <cmath>
#include <numbers>

namespace gll {

double solver_slack(const std::vector<const MinResult*>& results) {
  double s = 0.0;
  for (const MinResult* r : results)
    s += r->provenance.grad_tolerance * (1.0 + std::abs(r->value));
  return 10.0 * s;
}

namespace {

void put_provenance(InequalityReport& rep, const std::string& p, const MinResult& r) {
  rep.details[p + "_value"] = r.value;
  rep.details[p + "_residual"] = r.residual;
  rep.details[p + "_iterations"] = r.iterations;
  rep.details[p + "_converged"] = r.converged ? 1.0 : 0.0;
  rep.details[p + "_counts"] = r.provenance.counts[0];
  rep.details[p + "_seed"] = static_cast<double>(r.provenance.seed);
  rep.details[p + "_tol"] = r.provenance.grad_tolerance;
}

}  // namespace

InequalityReport check_lem1(double b, double R, const VerifyConfig& cfg) {
  const int n2 = cfg.rule_2d.counts_for(R, Bc::Dirichlet);
  const int n3 = cfg.rule_3d.counts_for(R, Bc::Dirichlet);
  const MinResult m0 = ground_energy_2d(b, R, n2, cfg.solver);
  const MinResult M0 = ground_energy_3d(b, R, n3, cfg.solver);

  InequalityReport rep;
  rep.name = "lem1_sandwich";
  rep.lhs = R * m0.value;
  rep.rhs = M0.value;
  rep.slack_used = solver_slack({&m0, &M0}) * (1.0 + R);
  rep.holds = rep.lhs <= rep.rhs + rep.slack_used;
  rep.details["b"] = b;
  rep.details["R"] = R;
  rep.details["fitted_C_right"] = M0.value - (R - 2.0) * m0.value;
  put_provenance(rep, "m0", m0);
  put_provenance(rep, "M0", M0);
  rep.note = "R*m0 <= M0 asserted; right-hand C fitted from M0 - (R-2)*m0";
  return rep;
}

InequalityReport check_lem2(double b, double R, const VerifyConfig& cfg) {
  const GEstimate g = estimate_g(b, cfg.g_R_list, cfg.rule_2d, cfg.solver);
  const int n3 = cfg.rule_3d.counts_for(R, Bc::Dirichlet);
  const MinResult M0 = ground_energy_3d(b, R, n3, cfg.solver);

  InequalityReport rep;
  rep.name = "lem2_g_sandwich";
  rep.lhs = g.extrapolated_g;
  rep.rhs = M0.value / (R * R * R);
  rep.slack_used = solver_slack({&M0}) / (R * R * R) + g.fit_residual;
  rep.holds = rep.lhs <= rep.rhs + rep.slack_used;
  rep.details["b"] = b;
  rep.details["R"] = R;
  rep.details["ghat"] = g.extrapolated_g;
  rep.details["g_fit_residual"] = g.fit_residual;
  rep.details["fitted_C_right"] = R * (rep.rhs - (R - 2.0) / R * g.extrapolated_g);
  put_provenance(rep, "M0", M0);
  rep.note = "ghat <= M0/R^3 asserted; right-hand C fitted";
  return rep;
}

InequalityReport check_virial(const MinResult& min_result) {
  if (min_result.field.size() == 0)
    throw NotApplicable("check_virial: result carries no field");
  const double quartic_integral = 2.0 * min_result.breakdown.quartic;
  const double defect =
      std::abs(min_result.value + 0.5 * quartic_integral) / (1.0 + std::abs(min_result.value));

  InequalityReport rep;
  rep.name = "virial_pairing";
  rep.lhs = defect;
  rep.rhs = 1e-6;
  rep.slack_used = 0.0;
  rep.holds = min_result.converged && defect <= 1e-6;
  rep.details["defect"] = defect;
  rep.details["quartic_integral"] = quartic_integral;
  put_provenance(rep, "min", min_result);
  if (!min_result.converged) rep.note = "input not converged";
  return rep;
}

InequalityReport check_L4_bounds(double b, double R, const VerifyConfig& cfg) {
  const GEstimate g = estimate_g(b, cfg.g_R_list, cfg.rule_2d, cfg.solver);
  const int n3 = cfg.rule_3d.counts_for(R, Bc::Dirichlet);
  const MinResult M0 = ground_energy_3d(b, R, n3, cfg.solver);
  const double l4 = 2.0 * M0.breakdown.quartic;
  const double gh = g.extrapolated_g;

  InequalityReport rep;
  rep.name = "l4_mass_bounds";
  rep.lhs = l4;
  rep.rhs = -2.0 * R * R * R * gh;
  rep.slack_used = solver_slack({&M0}) + 2.0 * R * R * R * g.fit_residual;
  rep.holds = rep.lhs <= rep.rhs + rep.slack_used;
  rep.details["b"] = b;
  rep.details["R"] = R;
  rep.details["ghat"] = gh;
  rep.details["g_fit_residual"] = g.fit_residual;
  rep.details["lower_fitted_C"] = (-2.0 * R * R * (R - 2.0) * gh - l4) / (R * R);
  put_provenance(rep, "M0", M0);
  rep.note = "integral |v|^4 <= -2 R^3 ghat asserted; lower-side C fitted";
  return rep;
}

InequalityReport check_nf(double b, const std::vector<double>& R_list, const VerifyConfig& cfg) {
  if (R_list.size() < 3) throw Error("check_nf: need >= 3 R values");
  const GEstimate g = estimate_g(b, cfg.g_R_list, cfg.rule_2d, cfg.solver);
  const double gh = g.extrapolated_g;
  const double bound = -std::sqrt(-2.0 * gh);

  InequalityReport rep;
  rep.name = "nf_quotient_bounds";
  rep.details["b"] = b;
  rep.details["ghat"] = gh;
  rep.details["g_fit_residual"] = g.fit_residual;

  bool lower_ok = true;
  std::vector<double> gaps;
  double scaled_last = 0.0;
  for (std::size_t i = 0; i < R_list.size(); ++i) {
    const double R = R_list[i];
    const int n3 = cfg.rule_3d.counts_for(R, Bc::Dirichlet);
    const MinResult q = l4_quotient_minimum(b, R, n3, cfg.solver);
    const double scaled = q.value / std::pow(R, 1.5);
    scaled_last = scaled;
    const double gslack =
        g.fit_residual / std::max(std::sqrt(-2.0 * gh), 1e-6);  // d bound / d ghat
    const double slack = solver_slack({&q}) / std::pow(R, 1.5) + gslack;
    if (scaled < bound - slack) lower_ok = false;
    const double gap = scaled - bound;
    gaps.push_back(gap);
    const std::string tag = "R" + std::to_string(static_cast<int>(R));
    rep.details[tag + "_scaled_quotient"] = scaled;
    rep.details[tag + "_gap"] = gap;
    rep.details[tag + "_slack"] = slack;
    const double denom = 0.5 * std::sqrt(-2.0 * gh) + 1.0 / std::sqrt(-2.0 * gh);
    rep.details[tag + "_upper_fitted_C"] = gap * R / denom;
    put_provenance(rep, tag + "_quotient", q);
  }

  bool gap_shrinks = true;
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (gaps[i] > gaps[i - 1] + 1e-9) gap_shrinks = false;

  const double g_from_quotient = -0.5 * scaled_last * scaled_last;
  const double consistency =
      std::abs(g_from_quotient - gh) / std::max(std::abs(gh), 1e-12);
  rep.details["g_from_quotient"] = g_from_quotient;
  rep.details["tail_consistency_rel"] = consistency;
  rep.details["gap_shrinks"] = gap_shrinks ? 1.0 : 0.0;

  rep.lhs = bound;  // asserted direction: scaled quotient >= bound - slack
  rep.rhs = scaled_last;
  rep.slack_used = rep.details["R" + std::to_string(static_cast<int>(R_list.back())) + "_slack"];
  rep.holds = lower_ok && gap_shrinks && consistency <= 0.15;
  rep.note = "lower bound per R, shrinking gap along R_list, 15% tail agreement with ghat";
  return rep;
}

InequalityReport check_g_bounds(const std::vector<double>& b_list, const VerifyConfig& cfg) {
  InequalityReport rep;
  rep.name = "g_function_bounds";
  bool ok = true;
  double prev = -1.0;
  bool first = true;
  double worst_margin = 0.0;
  for (double b : b_list) {
    const GEstimate g = estimate_g(b, cfg.g_R_list, cfg.rule_2d, cfg.solver);
    const double gh = g.extrapolated_g;
    const std::string tag = "b" + std::to_string(b);
    rep.details[tag + "_ghat"] = gh;
    rep.details[tag + "_fit_residual"] = g.fit_residual;
    if (b <= 1.0) {
      const double upper = -0.5 * (1.0 - b) * (1.0 - b);
      rep.details[tag + "_half_bound"] = upper;
      if (gh < upper - g.fit_residual - 1e-12) ok = false;
      if (b < 1.0) rep.details[tag + "_implied_alpha"] = -gh / ((1.0 - b) * (1.0 - b));
      worst_margin = std::max(worst_margin, upper - gh);
    } else if (gh < -1e-9) {
      ok = false;  // ghat must vanish above threshold
    }
    if (b == 0.0 && std::abs(gh + 0.5) > 0.02) ok = false;
    if (!first && gh < prev - 2.0 * g.fit_residual - 1e-12) ok = false;  // non-decreasing
    prev = gh;
    first = false;
  }
  rep.lhs = worst_margin;
  rep.rhs = 0.0;
  rep.slack_used = 0.0;
  rep.holds = ok;
  rep.note = "ghat within [-(1-b)^2/2, 0], non-decreasing in b, ghat(0) = -1/2 (+-0.02)";
  return rep;
}

InequalityReport check_ka(double b, int n, int counts, const VerifyConfig& cfg) {
  const double R = std::sqrt(2.0 * std::numbers::pi * n);
  const int n2 = cfg.rule_2d.counts_for(R, Bc::Dirichlet);
  const MinResult m0 = ground_energy_2d(b, R, n2, cfg.solver);
  const auto basis = lll_basis_cached(R, counts, 0.5, EigOptions{.seed = cfg.solver.seed});
  const AbrikosovResult ab = abrikosov_minimum(*basis, cfg.solver);

  const double fitted_C =
      std::max(0.0, (m0.value - (1.0 - b) * (1.0 - b) * ab.value) / ((1.0 - b) * R));

  InequalityReport rep;
  rep.name = "ka_inequality";
  rep.lhs = m0.value;
  rep.rhs = (1.0 - b) * (1.0 - b) * ab.value + fitted_C * (1.0 - b) * R;
  rep.slack_used = solver_slack({&m0});
  rep.holds = rep.lhs <= rep.rhs + rep.slack_used;
  rep.details["b"] = b;
  rep.details["n"] = n;
  rep.details["R"] = R;
  rep.details["cR"] = ab.value;
  rep.details["fitted_C"] = fitted_C;
  rep.details["abrikosov_defect"] = ab.stationarity_defect;
  put_provenance(rep, "m0", m0);
  rep.note = "m0 <= (1-b)^2 c(R) + C (1-b) R with C fitted";
  return rep;
}

}  // namespace gll
