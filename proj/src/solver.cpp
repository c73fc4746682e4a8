#include "gll/solver.hpp"

#include <cmath>
#include <vector>

namespace gll::detail {

namespace {

struct StepStats {
  double ss = 0.0, sy = 0.0, ydd = 0.0;  // secant pairings, dd = M y
  double dr_prev = 0.0;                  // <d_prev, r_prev> = <d_prev, M^-1 d_prev>
  double res_inf = 0.0, u_inf = 0.0;     // residual and iterate sup norms
};

// One fused pass over the six iterate/gradient/direction arrays.
StepStats step_stats(const ComplexField& u, const ComplexField& u_prev, const ComplexField& r,
                     const ComplexField& r_prev, const ComplexField& d,
                     const ComplexField& d_prev) {
  const std::size_t n = u.size();
  const std::size_t nb = (n + kernels::kBlock - 1) / kernels::kBlock;
  std::vector<StepStats> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nb); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kernels::kBlock;
    const std::size_t hi = lo + kernels::kBlock < n ? lo + kernels::kBlock : n;
    StepStats st;
    for (std::size_t i = lo; i < hi; ++i) {
      const cxd si = u.v[i] - u_prev.v[i];
      const cxd yi = r.v[i] - r_prev.v[i];
      const cxd ddi = d.v[i] - d_prev.v[i];
      st.ss += std::norm(si);
      st.sy += si.real() * yi.real() + si.imag() * yi.imag();
      st.ydd += yi.real() * ddi.real() + yi.imag() * ddi.imag();
      st.dr_prev += d_prev.v[i].real() * r_prev.v[i].real() +
                    d_prev.v[i].imag() * r_prev.v[i].imag();
      st.res_inf = std::max(st.res_inf, std::norm(r.v[i]));
      st.u_inf = std::max(st.u_inf, std::norm(u.v[i]));
    }
    partial[static_cast<std::size_t>(blk)] = st;
  }
  StepStats total;
  for (const StepStats& p : partial) {
    total.ss += p.ss;
    total.sy += p.sy;
    total.ydd += p.ydd;
    total.dr_prev += p.dr_prev;
    total.res_inf = std::max(total.res_inf, p.res_inf);
    total.u_inf = std::max(total.u_inf, p.u_inf);
  }
  total.res_inf = std::sqrt(total.res_inf);
  total.u_inf = std::sqrt(total.u_inf);
  return total;
}

}  // namespace

DescentOutcome bb_descent(const DescentProblem& problem, ComplexField u0, const SolverConfig& cfg,
                          double zero_threshold) {
  DescentOutcome out;
  const bool preconditioned = static_cast<bool>(problem.precond);
  ComplexField u = std::move(u0);
  ComplexField r(u.grid), u_prev(u.grid), r_prev(u.grid), d(u.grid), d_prev(u.grid);

  auto direction = [&](const ComplexField& grad_in, ComplexField& dir) {
    if (preconditioned)
      problem.precond(grad_in, dir);
    else
      dir.v = grad_in.v;
  };

  if (problem.post_step) problem.post_step(u);
  problem.grad(u, r);
  direction(r, d);

  double eta = problem.safe_step;
  const double eta_min = 1e-3 * problem.safe_step;
  const double eta_max = 1e4 * problem.safe_step;

  // BB steps are intentionally nonmonotone; the safeguards only catch
  // runaway iterates, the best snapshot protects the final answer.
  double best_value = problem.value(u);
  ComplexField best_u = u;
  double res_floor = 1e300;  // running minimum of the residual sup norm
  const int check_interval = 100;

  bool fresh = true;  // secant history invalid (start or just reverted)
  auto revert = [&]() {
    u.v = best_u.v;
    problem.grad(u, r);
    direction(r, d);
    eta = problem.safe_step;
    fresh = true;
  };

  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    u_prev.v = u.v;
    r_prev.v = r.v;
    d_prev.v = d.v;
    const double eta_used = eta;

    kernels::map(u.size(), [&](std::size_t i) { u.v[i] -= eta_used * d.v[i]; });
    if (problem.post_step) problem.post_step(u);
    problem.grad(u, r);
    direction(r, d);

    const StepStats st = step_stats(u, u_prev, r, r_prev, d, d_prev);

    if (!std::isfinite(st.res_inf) || !std::isfinite(st.u_inf) ||
        st.res_inf > 1e6 * std::max(res_floor, 1e-280)) {
      revert();
      continue;
    }
    res_floor = std::min(res_floor, st.res_inf);

    if (zero_threshold > 0.0 && st.u_inf <= zero_threshold) {
      for (auto& z : u.v) z = 0.0;  // normal state: snap to the exact zero minimizer
      out.collapsed = true;
      out.converged = true;
      ++it;
      break;
    }
    if (st.res_inf <= cfg.grad_tolerance * std::max(st.u_inf, 1e-300)) {
      out.converged = true;
      ++it;
      break;
    }

    if (cfg.step_rule == StepRule::AdaptiveTwoPoint && !fresh) {
      // alternate the short secant step <s,y>/<y,My> with the long one
      // <s,M^-1 s>/<s,y>; for plain descent these are classic BB2/BB1
      double bb = 0.0;
      if (st.sy > 0.0 && st.ydd > 0.0) {
        if (it % 2 == 0) {
          bb = st.sy / st.ydd;
        } else if (preconditioned) {
          const double s_minv_s = eta_used * eta_used * st.dr_prev;  // s = -eta d_prev
          if (s_minv_s > 0.0) bb = s_minv_s / st.sy;
        } else {
          bb = st.ss / st.sy;
        }
      }
      eta = bb > 0.0 ? std::min(std::max(bb, eta_min), eta_max) : problem.safe_step;
    }
    fresh = false;

    if ((it + 1) % check_interval == 0) {
      const double e = problem.value(u);
      if (e < best_value) {
        best_value = e;
        best_u.v = u.v;
      } else if (e > best_value + 10.0 * (1.0 + std::abs(best_value))) {
        revert();
      }
    }
  }

  // a converged iterate is certified stationary and kept as is; otherwise
  // fall back to the best energy snapshot
  if (!out.collapsed && !out.converged) {
    const double e = problem.value(u);
    if (e > best_value) {
      u.v = best_u.v;
      problem.grad(u, r);
    }
  }

  out.u = std::move(u);
  out.value = problem.value(out.u);
  const double unorm = kernels::norm_inf(out.u.size(), out.u.data());
  out.residual = unorm > 0.0 ? kernels::norm_inf(r.size(), r.data()) / unorm : 0.0;
  if (out.collapsed) out.residual = 0.0;
  out.iterations = it;
  return out;
}

}  // namespace gll::detail
