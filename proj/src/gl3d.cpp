#include "gll/gl3d.hpp"

#include <cmath>
#include <numbers>

namespace gll {

MinResult solve_periodic_gl(const ReducedParams& params, const std::array<int, 3>& counts,
                            const SolverConfig& cfg) {
  const Grid grid = build_grid({params.R, params.R, params.L},
                               {counts[0], counts[1], counts[2]}, Bc::MagneticPeriodic);
  const GaugeLinks links = link_phases(grid, Potential::SymmetricGauge3D);

  // Warm start from the in-plane periodic minimizer extended along x3. The
  // 3D descent still runs on the full grid, so any energy gain from x3
  // structure would be found; flatness is measured, not assumed.
  std::vector<ComplexField> warm;
  if (params.b > 0.0 && counts[0] == counts[1]) {
    const Grid g2 = build_grid({params.R, params.R}, {counts[0], counts[1]}, Bc::MagneticPeriodic);
    const GaugeLinks l2 = link_phases(g2, Potential::SymmetricGauge2D);
    MinResult planar = detail::minimize_gl_energy(params.b, g2, l2, cfg, params.R, 0.0);
    if (max_abs(planar.field) > 1e-12) {
      ComplexField u0(grid);
      const std::size_t slab = g2.sites();
      for (int z = 0; z < counts[2]; ++z)
        for (std::size_t s = 0; s < slab; ++s) u0.v[z * slab + s] = planar.field.v[s];
      warm.push_back(std::move(u0));
    }
  }
  return detail::minimize_gl_energy(params.b, grid, links, cfg, params.R, params.L,
                                    std::move(warm));
}

CellStats cell_statistics(const MinResult& min_result, const std::array<int, 3>& tiles) {
  const ComplexField& u = min_result.field;
  const Grid& g = u.grid;
  if (g.dim != 3) throw PartitionInvalid("cell_statistics: needs a 3D field");
  for (int a = 0; a < 3; ++a)
    if (tiles[a] < 1 || tiles[a] > g.counts[a])
      throw PartitionInvalid("cell_statistics: tile count out of range");

  const GaugeLinks links = link_phases(g, Potential::SymmetricGauge3D);

  CellStats stats;
  double sum2 = 0.0, sum4 = 0.0, vol_total = 0.0;
  for (int tz = 0; tz < tiles[2]; ++tz)
    for (int ty = 0; ty < tiles[1]; ++ty)
      for (int tx = 0; tx < tiles[0]; ++tx) {
        const int t[3] = {tx, ty, tz};
        Box box;
        double vol = 1.0;
        for (int a = 0; a < 3; ++a) {
          const double w = g.extent[a] / tiles[a];
          box.half[a] = 0.5 * w;
          box.center[a] = -0.5 * g.extent[a] + (t[a] + 0.5) * w;
          vol *= w;
        }
        CellRecord rec;
        rec.box = box;
        rec.local = local_energy(u, links, min_result.breakdown.b, box);
        // site sums restricted to the box reuse the local quadrature parts
        rec.mean_sq = -rec.local.mass / vol;
        rec.mean_quartic = 2.0 * rec.local.quartic / vol;
        sum2 += -rec.local.mass;
        sum4 += 2.0 * rec.local.quartic;
        vol_total += vol;
        stats.cells.push_back(rec);
      }
  stats.global_mean_sq = sum2 / vol_total;
  stats.global_mean_quartic = sum4 / vol_total;

  // x3 flatness diagnostic: spread of |u| along vertical columns
  const std::size_t slice = static_cast<std::size_t>(g.counts[0]) * g.counts[1];
  double worst = 0.0;
  for (std::size_t xy = 0; xy < slice; ++xy) {
    double lo = 1e300, hi = -1e300;
    for (int z = 0; z < g.counts[2]; ++z) {
      const double a = std::abs(u.v[xy + slice * z]);
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    worst = std::max(worst, hi - lo);
  }
  stats.max_x3_variation = worst;
  return stats;
}

namespace {

double abrikosov_tail(const Gl3dConfig& cfg) {
  const int n = cfg.eab_n_list.back();
  const double R = std::sqrt(2.0 * std::numbers::pi * n);
  const auto basis = lll_basis_cached(R, cfg.eab_counts, 0.5, EigOptions{.seed = cfg.solver.seed});
  SolverConfig scfg = cfg.solver;
  scfg.restarts = std::max(scfg.restarts, 8);
  const AbrikosovResult r = abrikosov_minimum(*basis, scfg);
  return r.value / (R * R);
}

}  // namespace

InequalityReport check_thm_l4(const std::vector<double>& b_list, const Gl3dConfig& cfg) {
  const double eab = abrikosov_tail(cfg);
  const double R = std::sqrt(2.0 * std::numbers::pi * cfg.n_quanta);

  InequalityReport rep;
  rep.name = "thm_l4_density";
  rep.details["EAb"] = eab;
  rep.details["R"] = R;

  bool in_window = true, trend = true;
  double prev_dev = -1.0;
  for (double b : b_list) {
    const MinResult r = solve_periodic_gl({b, R, R}, {cfg.counts_xy, cfg.counts_xy, cfg.counts_z},
                                          cfg.solver);
    const double vol = R * R * R;
    const double mean4 = 2.0 * r.breakdown.quartic / vol;
    const double rho4 = mean4 / (-2.0 * eab * (1.0 - b) * (1.0 - b));
    const std::string tag = "b" + std::to_string(b);
    rep.details[tag + "_mean4"] = mean4;
    rep.details[tag + "_rho4"] = rho4;
    rep.details[tag + "_residual"] = r.residual;
    if (rho4 < 0.8 || rho4 > 1.2) in_window = false;
    const double dev = std::abs(rho4 - 1.0);
    if (prev_dev >= 0.0 && dev > prev_dev + 1e-9) trend = false;
    prev_dev = dev;
    rep.details[tag + "_dev"] = dev;
  }
  rep.lhs = prev_dev;
  rep.rhs = 0.2;
  rep.slack_used = 0.0;
  rep.holds = in_window && trend;
  rep.note = "rho4 in [0.8, 1.2] per b; |rho4 - 1| non-increasing toward b -> 1";
  return rep;
}

InequalityReport check_thm_l2(const std::vector<double>& b_list, const Gl3dConfig& cfg) {
  const double eab = abrikosov_tail(cfg);
  const double R = std::sqrt(2.0 * std::numbers::pi * cfg.n_quanta);
  const auto basis = lll_basis_cached(R, cfg.counts_xy, 0.5, EigOptions{.seed = cfg.solver.seed});

  InequalityReport rep;
  rep.name = "thm_l2_density";
  rep.details["EAb"] = eab;
  rep.details["R"] = R;

  bool in_window = true, trend = true;
  double prev_dev = -1.0;
  double fitted_C = 0.0;
  for (double b : b_list) {
    const MinResult r = solve_periodic_gl({b, R, R}, {cfg.counts_xy, cfg.counts_xy, cfg.counts_z},
                                          cfg.solver);
    const double vol = R * R * R;
    const double mean2 = -r.breakdown.mass / vol;
    const double rho2 = mean2 / (-2.0 * eab * (1.0 - b));
    const std::string tag = "b" + std::to_string(b);
    rep.details[tag + "_mean2"] = mean2;
    rep.details[tag + "_rho2"] = rho2;
    if (rho2 < 0.8 || rho2 > 1.2) in_window = false;
    const double dev = std::abs(rho2 - 1.0);
    if (prev_dev >= 0.0 && dev > prev_dev + 1e-9) trend = false;
    prev_dev = dev;
    rep.details[tag + "_dev"] = dev;

    // lowest-level proximity, Lemma-5.3 style scaling
    ComplexField proj = project_lll(r.field, *basis);
    ComplexField diff(r.field.grid);
    kernels::map(diff.size(), [&](std::size_t i) { diff.v[i] = r.field.v[i] - proj.v[i]; });
    const double rel = std::sqrt(wnorm2_sq(diff) / std::max(wnorm2_sq(r.field), 1e-300));
    const double c_b = rel / std::sqrt(1.0 - b);
    rep.details[tag + "_lll_distance_rel"] = rel;
    rep.details[tag + "_lll_C"] = c_b;
    fitted_C = std::max(fitted_C, c_b);
  }
  rep.details["lll_fitted_C"] = fitted_C;
  rep.lhs = prev_dev;
  rep.rhs = 0.2;
  rep.slack_used = 0.0;
  rep.holds = in_window && trend && fitted_C < 1e6;
  rep.note = "rho2 in [0.8, 1.2] per b with trend; ||u - Pu|| <= C sqrt(1-b), C fitted";
  return rep;
}

}  // namespace gll
