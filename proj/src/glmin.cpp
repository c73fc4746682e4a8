#include "gll/glmin.hpp"

#include <algorithm>
#include <cmath>

#include "gll/precond.hpp"
#include "gll/rng.hpp"

namespace gll {

namespace {

double operator_bound(const Grid& g) {
  double s = 0.0;
  for (int a = 0; a < g.dim; ++a) s += 4.0 / (g.spacing[a] * g.spacing[a]);
  return s;
}

Provenance make_provenance(double b, double R, double L, const Grid& g, const SolverConfig& cfg,
                           std::uint64_t seed) {
  Provenance p;
  p.b = b;
  p.R = R;
  p.L = L;
  p.counts = g.counts;
  p.seed = seed;
  p.grad_tolerance = cfg.grad_tolerance;
  return p;
}

}  // namespace

namespace detail {

MinResult minimize_gl_energy(double b, const Grid& grid, const GaugeLinks& links,
                             const SolverConfig& cfg, double R, double L,
                             std::vector<ComplexField> warm_starts) {
  MinResult best;
  bool have = false;

  if (b == 0.0) {
    // Kinetic term drops out; |u| = 1 on interior sites is the exact
    // discrete minimizer, so evaluate it directly.
    ComplexField u(grid);
    for (auto& z : u.v) z = 1.0;
    best.field = std::move(u);
    best.breakdown = energy(best.field, links, 0.0);
    best.value = best.breakdown.total;
    best.residual = 0.0;
    best.iterations = 0;
    best.converged = true;
    best.provenance = make_provenance(b, R, L, grid, cfg, cfg.seed);
    return best;
  }

  const SpectralPreconditioner precond(grid, b, 1.0);
  detail::DescentProblem prob;
  prob.value = [&](const ComplexField& u) { return energy(u, links, b).total; };
  prob.grad = [&](const ComplexField& u, ComplexField& r) {
    apply_operator(links, u.data(), r.data());
    kernels::map(u.size(), [&](std::size_t i) {
      r.v[i] = b * r.v[i] + (std::norm(u.v[i]) - 1.0) * u.v[i];
    });
  };
  prob.precond = [&](const ComplexField& r, ComplexField& d) { precond.apply(r, d); };
  prob.safe_step = 0.25;

  auto consider = [&](detail::DescentOutcome o, std::uint64_t seed) {
    if (!have || o.value < best.value - 1e-14 * (1.0 + std::abs(best.value))) {
      best.field = std::move(o.u);
      best.value = o.value;
      best.residual = o.residual;
      best.iterations = o.iterations;
      best.converged = o.converged;
      best.provenance = make_provenance(b, R, L, grid, cfg, seed);
      have = true;
    }
  };

  // warm starts count against the restart budget; remaining slots are the
  // seeded Gaussian draws
  int used = 0;
  for (ComplexField& w : warm_starts) {
    if (used >= std::max(1, cfg.restarts)) break;
    consider(detail::bb_descent(prob, std::move(w), cfg, 1e-10), cfg.seed);
    ++used;
  }
  const double amp = std::sqrt(std::max(1.0 - b, 0.01));
  for (int t = used; t < std::max(1, cfg.restarts); ++t) {
    const std::uint64_t seed = cfg.seed + 1000003ULL * static_cast<std::uint64_t>(t);
    ComplexField u0 = gaussian_field(grid, seed, amp);
    consider(detail::bb_descent(prob, std::move(u0), cfg, 1e-10), seed);
  }
  best.breakdown = energy(best.field, links, b);
  best.value = best.breakdown.total;
  return best;
}

}  // namespace detail

MinResult ground_energy_2d(double b, double R, int counts, const SolverConfig& cfg) {
  const Grid grid = build_grid({R, R}, {counts, counts}, Bc::Dirichlet);
  const GaugeLinks links = link_phases(grid, Potential::SymmetricGauge2D);
  return detail::minimize_gl_energy(b, grid, links, cfg, R, 0.0);
}

MinResult ground_energy_3d(double b, double R, int counts, const SolverConfig& cfg) {
  const Grid grid = build_grid({R, R, R}, {counts, counts, counts}, Bc::Dirichlet);
  const GaugeLinks links = link_phases(grid, Potential::SymmetricGauge3D);

  // Tensor warm start: the in-plane minimizer times a wall profile along x3,
  // with the amplitude set by the exact quartic-in-t line minimum.
  std::vector<ComplexField> warm;
  if (b > 0.0) {
    MinResult planar = ground_energy_2d(b, R, counts, cfg);
    if (max_abs(planar.field) > 1e-12) {
      const double xi = std::sqrt(2.0 * b / std::max(1.0 - b, 0.05));
      ComplexField u0(grid);
      const std::size_t slab = grid.sites() / counts;
      for (int z = 0; z < counts; ++z) {
        const double dist = 0.5 * R - std::abs(grid.position(2, z));
        const double w = std::tanh(dist / xi);
        for (std::size_t s = 0; s < slab; ++s) u0.v[z * slab + s] = w * planar.field.v[s];
      }
      const EnergyBreakdown e = energy(u0, links, b);
      const double quad = b * e.kinetic_raw + e.mass;
      const double q4 = 2.0 * e.quartic;
      if (quad < 0.0 && q4 > 0.0) {
        const double t = std::sqrt(-quad / q4);
        kernels::scale(u0.size(), t, u0.data());
        warm.push_back(std::move(u0));
      }
    }
  }
  return detail::minimize_gl_energy(b, grid, links, cfg, R, R, std::move(warm));
}

MinResult l4_quotient_minimum(double b, double R, int counts, const SolverConfig& cfg) {
  if (!(b > 0.0 && b < 1.0)) throw Error("l4_quotient_minimum: b must lie in (0,1)");
  const Grid grid = build_grid({R, R, R}, {counts, counts, counts}, Bc::Dirichlet);
  const GaugeLinks links = link_phases(grid, Potential::SymmetricGauge3D);
  const double vol = grid.volume_element();

  auto quartic_mass = [&](const ComplexField& u) {
    return vol * kernels::norm4_4(u.size(), u.data());
  };

  detail::DescentProblem prob;
  prob.value = [&](const ComplexField& u) {
    const EnergyBreakdown e = energy(u, links, b);
    const double q4 = 2.0 * e.quartic;
    return (b * e.kinetic_raw + e.mass) / std::sqrt(q4);
  };
  prob.grad = [&](const ComplexField& u, ComplexField& r) {
    apply_operator(links, u.data(), r.data());
    // after each renormalization integral |u|^4 = 1, so the quotient equals
    // the linear part and its gradient is b P u - u - (J/2) |u|^2 u
    const double kin = vol * (kernels::dot(u.size(), u.data(), r.data())).real();
    const double mass = -vol * kernels::norm2_sq(u.size(), u.data());
    const double j = b * kin + mass;
    kernels::map(u.size(), [&](std::size_t i) {
      r.v[i] = b * r.v[i] - u.v[i] - j * std::norm(u.v[i]) * u.v[i];
    });
  };
  prob.post_step = [&](ComplexField& u) {
    const double q4 = quartic_mass(u);
    if (q4 > 0.0) kernels::scale(u.size(), std::pow(q4, -0.25), u.data());
  };
  const SpectralPreconditioner precond(grid, b, 1.0);
  prob.precond = [&](const ComplexField& r, ComplexField& d) { precond.apply(r, d); };
  prob.safe_step = 0.25;

  MinResult best;
  bool have = false;
  auto consider = [&](detail::DescentOutcome o, std::uint64_t seed) {
    if (!have || o.value < best.value - 1e-14 * (1.0 + std::abs(best.value))) {
      best.field = std::move(o.u);
      best.value = o.value;
      best.residual = o.residual;
      best.iterations = o.iterations;
      best.converged = o.converged;
      best.provenance = make_provenance(b, R, R, grid, cfg, seed);
      have = true;
    }
  };

  // The rescaled Dirichlet GL minimizer is a stationary point of the
  // quotient, so it makes the canonical warm start; in the normal-state
  // regime (zero minimizer) the flow starts from the Gaussian draw instead.
  {
    MinResult gl = detail::minimize_gl_energy(b, grid, links, cfg, R, R);
    const double q4 = quartic_mass(gl.field);
    if (q4 > 1e-280) {
      ComplexField u0 = std::move(gl.field);
      kernels::scale(u0.size(), std::pow(q4, -0.25), u0.data());
      consider(detail::bb_descent(prob, std::move(u0), cfg, 0.0), gl.provenance.seed);
    }
  }
  for (int t = 0; !have && t < std::max(1, cfg.restarts); ++t) {
    const std::uint64_t seed = cfg.seed + 1000003ULL * static_cast<std::uint64_t>(t);
    ComplexField u0 = gaussian_field(grid, seed, 1.0);
    consider(detail::bb_descent(prob, std::move(u0), cfg, 0.0), seed);
  }
  best.breakdown = energy(best.field, links, b);
  return best;
}

int GridRule::counts_for(double extent, Bc bc) const {
  int n = static_cast<int>(std::lround(extent / target_spacing));
  if (bc == Bc::Dirichlet) n -= 1;
  return std::clamp(n, min_counts, max_counts);
}

GEstimate estimate_g(double b, const std::vector<double>& R_list, const GridRule& rule,
                     const SolverConfig& cfg) {
  if (R_list.size() < 3) throw Error("estimate_g: need at least 3 R values");
  for (std::size_t i = 1; i < R_list.size(); ++i)
    if (!(R_list[i] > R_list[i - 1])) throw Error("estimate_g: R_list must be increasing");

  GEstimate est;
  est.b = b;
  for (double R : R_list) {
    const int n = rule.counts_for(R, Bc::Dirichlet);
    MinResult r = ground_energy_2d(b, R, n, cfg);
    est.values.emplace_back(R, r.value / (R * R));
    est.runs.push_back(std::move(r));
  }

  // least squares for y = g + C/R
  double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (auto& [R, y] : est.values) {
    const double x = 1.0 / R;
    s1 += 1;
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
  }
  const double det = s1 * sxx - sx * sx;
  const double g_fit = (sy * sxx - sx * sxy) / det;
  const double c_fit = (s1 * sxy - sx * sy) / det;
  est.fitted_C = c_fit;
  est.extrapolated_g = std::clamp(g_fit, -0.5, 0.0);
  double resid = 0.0;
  for (auto& [R, y] : est.values) resid = std::max(resid, std::abs(y - g_fit - c_fit / R));
  est.fit_residual = resid;
  est.monotone = true;
  for (std::size_t i = 1; i < est.values.size(); ++i)
    if (est.values[i].second > est.values[i - 1].second) est.monotone = false;
  return est;
}

}  // namespace gll
