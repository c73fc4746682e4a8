#include "gll/abrikosov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gll/rng.hpp"

namespace gll {

double AbrikosovTensor::quartic(const std::vector<cxd>& c) const {
  const int nn = n;
  cxd q = 0.0;
  for (int m = 0; m < nn; ++m)
    for (int m2 = 0; m2 < nn; ++m2)
      for (int k = 0; k < nn; ++k)
        for (int k2 = 0; k2 < nn; ++k2)
          q += std::conj(c[m]) * std::conj(c[m2]) * c[k] * c[k2] *
               t[((static_cast<std::size_t>(m) * nn + m2) * nn + k) * nn + k2];
  return q.real();
}

void AbrikosovTensor::grad(const std::vector<cxd>& c, std::vector<cxd>& g) const {
  const int nn = n;
  g.assign(nn, cxd{0.0, 0.0});
  for (int m = 0; m < nn; ++m) {
    cxd acc = 0.0;
    for (int m2 = 0; m2 < nn; ++m2)
      for (int k = 0; k < nn; ++k)
        for (int k2 = 0; k2 < nn; ++k2)
          acc += std::conj(c[m2]) * c[k] * c[k2] *
                 t[((static_cast<std::size_t>(m) * nn + m2) * nn + k) * nn + k2];
    g[m] = acc - c[m];  // d/d conj(c_m) of 1/2 integral|v|^4 - integral|v|^2
  }
}

AbrikosovTensor interaction_tensor(const LLLBasis& basis) {
  const int n = basis.dimension;
  const std::size_t sites = basis.grid.sites();
  const double w = basis.grid.spacing[0] * basis.grid.spacing[1];

  AbrikosovTensor tensor;
  tensor.n = n;
  tensor.t.assign(static_cast<std::size_t>(n) * n * n * n, cxd{0.0, 0.0});

  const std::size_t tuples = tensor.t.size();
  kernels::map(tuples, [&](std::size_t idx) {
    const int k2 = static_cast<int>(idx % n);
    const int k = static_cast<int>((idx / n) % n);
    const int m2 = static_cast<int>((idx / n / n) % n);
    const int m = static_cast<int>(idx / n / n / n);
    const cxd* fm = basis.f[m].data();
    const cxd* fm2 = basis.f[m2].data();
    const cxd* fk = basis.f[k].data();
    const cxd* fk2 = basis.f[k2].data();
    cxd acc = 0.0;
    for (std::size_t s = 0; s < sites; ++s)
      acc += std::conj(fm[s]) * std::conj(fm2[s]) * fk[s] * fk2[s];
    tensor.t[idx] = w * acc;
  });
  return tensor;
}

EnergyBreakdown abrikosov_energy(const std::vector<cxd>& coefficients, const LLLBasis& basis) {
  if (static_cast<int>(coefficients.size()) != basis.dimension)
    throw DimensionMismatch("abrikosov_energy: coefficient count differs from basis dimension");

  ComplexField v(basis.grid);
  for (int m = 0; m < basis.dimension; ++m)
    kernels::axpy(v.size(), coefficients[m], basis.f[m].data(), v.data());

  EnergyBreakdown e;
  e.b = 0.0;
  e.kinetic_raw = wnorm2_sq(v);  // eigenvalue-one identity, diagnostic only
  e.mass = -wnorm2_sq(v);
  e.quartic = 0.5 * wnorm4_4(v);
  e.total = e.mass + e.quartic;
  return e;
}

AbrikosovResult abrikosov_minimum(const LLLBasis& basis, const SolverConfig& cfg) {
  const int n = basis.dimension;
  const double R = basis.grid.extent[0];
  const AbrikosovTensor tensor = interaction_tensor(basis);

  AbrikosovResult best;
  best.n = n;
  best.R = R;
  double worst = -1e300;
  bool have = false;

  std::vector<cxd> c(n), g(n), c_prev(n), g_prev(n);
  const int restarts = std::max(1, cfg.restarts);
  for (int t = 0; t < restarts; ++t) {
    Rng rng(cfg.seed + 7919ULL * static_cast<std::uint64_t>(t));
    for (auto& z : c) z = rng.gaussian_cx();

    tensor.grad(c, g);
    double eta = 0.25;
    bool converged = false;
    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
      c_prev = c;
      g_prev = g;
      for (int m = 0; m < n; ++m) c[m] -= eta * g[m];
      tensor.grad(c, g);

      double gmax = 0.0, cmax = 0.0;
      for (int m = 0; m < n; ++m) {
        gmax = std::max(gmax, std::abs(g[m]));
        cmax = std::max(cmax, std::abs(c[m]));
      }
      if (gmax <= cfg.grad_tolerance * std::max(cmax, 1e-300) || gmax <= 1e-12) {
        converged = true;
        ++it;
        break;
      }

      double ss = 0.0, sy = 0.0, yy = 0.0;
      for (int m = 0; m < n; ++m) {
        const cxd sm = c[m] - c_prev[m], ym = g[m] - g_prev[m];
        ss += std::norm(sm);
        sy += sm.real() * ym.real() + sm.imag() * ym.imag();
        yy += std::norm(ym);
      }
      eta = (sy > 0.0 && yy > 0.0) ? std::clamp(it % 2 == 0 ? sy / yy : ss / sy, 1e-6, 10.0)
                                   : 0.25;
    }

    const double q = tensor.quartic(c);
    double l2 = 0.0;
    for (const cxd& z : c) l2 += std::norm(z);
    const double value = 0.5 * q - l2;
    if (!have || value < best.value) {
      best.value = value;
      best.coefficients = c;
      best.converged = converged;
      best.pairing_defect = std::abs(q - l2);
      double gmax = 0.0;
      for (const cxd& z : g) gmax = std::max(gmax, std::abs(z));
      best.stationarity_defect = gmax;
      have = true;
    }
    worst = std::max(worst, value);
  }
  best.value_spread = worst - best.value;
  return best;
}

AbrikosovEstimate abrikosov_constant_estimate(const std::vector<int>& n_list, int counts,
                                              const std::vector<double>& b_list,
                                              const std::vector<double>& g_R_list,
                                              const GridRule& g_rule, const SolverConfig& cfg) {
  AbrikosovEstimate est;
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw Error("abrikosov_constant_estimate: n_list must increase");

  for (int n : n_list) {
    const double R = std::sqrt(2.0 * std::numbers::pi * n);
    const LLLBasis basis = lll_basis(R, counts, 0.5, EigOptions{.seed = cfg.seed});
    const AbrikosovResult r = abrikosov_minimum(basis, cfg);
    est.n_list.push_back(n);
    est.R_list.push_back(R);
    est.c_over_R2.push_back(r.value / (R * R));
  }
  for (std::size_t i = 1; i < est.c_over_R2.size(); ++i)
    est.successive_differences.push_back(est.c_over_R2[i] - est.c_over_R2[i - 1]);
  est.extrapolated_EAb = est.c_over_R2.back();

  // least squares of ghat(b) against E (1-b)^2
  double num = 0.0, den = 0.0;
  for (double b : b_list) {
    const GEstimate g = estimate_g(b, g_R_list, g_rule, cfg);
    const double w = (1.0 - b) * (1.0 - b);
    num += g.extrapolated_g * w;
    den += w * w;
  }
  est.cross_check_EAb = den > 0.0 ? num / den : 0.0;
  return est;
}

}  // namespace gll
