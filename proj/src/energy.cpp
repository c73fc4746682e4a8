#include "gll/energy.hpp"

#include <cmath>

namespace gll {

namespace {

struct Sizes {
  int n[3];
  std::size_t stride[3];
  double inv_h2[3];
  int dim;
  bool periodic;
};

Sizes sizes_of(const Grid& g) {
  Sizes z{};
  z.dim = g.dim;
  z.periodic = g.bc == Bc::MagneticPeriodic;
  z.n[0] = g.counts[0];
  z.n[1] = g.counts[1];
  z.n[2] = g.counts[2];
  z.stride[0] = 1;
  z.stride[1] = static_cast<std::size_t>(z.n[0]);
  z.stride[2] = static_cast<std::size_t>(z.n[0]) * z.n[1];
  for (int a = 0; a < g.dim; ++a) z.inv_h2[a] = 1.0 / (g.spacing[a] * g.spacing[a]);
  return z;
}

inline void decompose(std::size_t s, const Sizes& z, int c[3]) {
  c[0] = static_cast<int>(s % z.n[0]);
  const std::size_t r = s / z.n[0];
  c[1] = static_cast<int>(r % z.n[1]);
  c[2] = static_cast<int>(r / z.n[1]);
}

void require_same_grid(const ComplexField& field, const GaugeLinks& links) {
  if (field.grid != links.grid) throw GridMismatch("field grid differs from links grid");
}

}  // namespace

EnergyBreakdown energy(const ComplexField& field, const GaugeLinks& links, double b) {
  require_same_grid(field, links);
  const Grid& g = field.grid;
  const Sizes z = sizes_of(g);
  const cxd* u = field.data();

  auto sums = kernels::sum_multi<3>(g.sites(), [&](std::size_t s, std::array<double, 3>& acc) {
    int c[3];
    decompose(s, z, c);
    const cxd us = u[s];
    const double m2 = std::norm(us);
    acc[1] -= m2;
    acc[2] += 0.5 * m2 * m2;
    for (int a = 0; a < z.dim; ++a) {
      if (c[a] + 1 < z.n[a]) {
        acc[0] += std::norm(links.link[a][s] * u[s + z.stride[a]] - us) * z.inv_h2[a];
      } else if (z.periodic) {
        const std::size_t nb = s - static_cast<std::size_t>(z.n[a] - 1) * z.stride[a];
        acc[0] += std::norm(links.link[a][s] * u[nb] - us) * z.inv_h2[a];
      } else {
        acc[0] += m2 * z.inv_h2[a];  // edge into the upper boundary, u = 0 there
      }
      if (!z.periodic && c[a] == 0) acc[0] += m2 * z.inv_h2[a];  // lower boundary edge
    }
  });

  const double vol = g.volume_element();
  EnergyBreakdown e;
  e.kinetic_raw = sums[0] * vol;
  e.mass = sums[1] * vol;
  e.quartic = sums[2] * vol;
  e.b = b;
  e.total = b * e.kinetic_raw + e.mass + e.quartic;
  return e;
}

void apply_operator(const GaugeLinks& links, const cxd* u, cxd* out) {
  const Grid& g = links.grid;
  const Sizes z = sizes_of(g);
  kernels::map(g.sites(), [&](std::size_t s) {
    int c[3];
    decompose(s, z, c);
    cxd acc = 0.0;
    for (int a = 0; a < z.dim; ++a) {
      cxd diag = 2.0 * u[s];
      if (c[a] + 1 < z.n[a])
        diag -= links.link[a][s] * u[s + z.stride[a]];
      else if (z.periodic)
        diag -= links.link[a][s] * u[s - static_cast<std::size_t>(z.n[a] - 1) * z.stride[a]];
      if (c[a] > 0)
        diag -= std::conj(links.link[a][s - z.stride[a]]) * u[s - z.stride[a]];
      else if (z.periodic) {
        const std::size_t nb = s + static_cast<std::size_t>(z.n[a] - 1) * z.stride[a];
        diag -= std::conj(links.link[a][nb]) * u[nb];
      }
      acc += diag * z.inv_h2[a];
    }
    out[s] = acc;
  });
}

ComplexField gradient(const ComplexField& field, const GaugeLinks& links, double b) {
  require_same_grid(field, links);
  ComplexField r(field.grid);
  apply_operator(links, field.data(), r.data());
  const cxd* u = field.data();
  kernels::map(field.size(), [&](std::size_t s) {
    r.v[s] = b * r.v[s] + (std::norm(u[s]) - 1.0) * u[s];
  });
  return r;
}

double quadratic_form(const ComplexField& field, const GaugeLinks& links) {
  return energy(field, links, 1.0).kinetic_raw;
}

EnergyBreakdown local_energy(const ComplexField& field, const GaugeLinks& links, double b,
                             const Box& box) {
  require_same_grid(field, links);
  const Grid& g = field.grid;
  const Sizes z = sizes_of(g);

  double lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    lo[a] = box.center[a] - box.half[a];
    hi[a] = box.center[a] + box.half[a];
    const double edge = 0.5 * g.extent[a] + 1e-9;
    if (lo[a] < -edge || hi[a] > edge || !(box.half[a] > 0.0))
      throw BoxOutOfDomain("local_energy: box leaves the grid domain");
    // half-open [lo, hi) with a sub-spacing tolerance so a face that lands on
    // a site plane up to rounding assigns the plane to the upper box in every
    // member of a tiling
    const double eps = 1e-7 * g.spacing[a];
    lo[a] -= eps;
    hi[a] -= eps;
  }

  auto inside = [&](const double* p) {
    for (int a = 0; a < z.dim; ++a)
      if (p[a] < lo[a] || p[a] >= hi[a]) return false;
    return true;
  };

  const cxd* u = field.data();
  auto sums = kernels::sum_multi<3>(g.sites(), [&](std::size_t s, std::array<double, 3>& acc) {
    int c[3];
    decompose(s, z, c);
    double p[3] = {0, 0, 0};
    for (int a = 0; a < z.dim; ++a) p[a] = g.position(a, c[a]);
    const cxd us = u[s];
    const double m2 = std::norm(us);
    if (inside(p)) {
      acc[1] -= m2;
      acc[2] += 0.5 * m2 * m2;
    }
    double mid[3] = {p[0], p[1], p[2]};
    for (int a = 0; a < z.dim; ++a) {
      mid[a] = p[a] + 0.5 * g.spacing[a];  // midpoint of the +a edge
      if (inside(mid)) {
        if (c[a] + 1 < z.n[a])
          acc[0] += std::norm(links.link[a][s] * u[s + z.stride[a]] - us) * z.inv_h2[a];
        else if (z.periodic)
          acc[0] += std::norm(links.link[a][s] *
                                  u[s - static_cast<std::size_t>(z.n[a] - 1) * z.stride[a]] -
                              us) *
                    z.inv_h2[a];
        else
          acc[0] += m2 * z.inv_h2[a];
      }
      if (!z.periodic && c[a] == 0) {
        mid[a] = p[a] - 0.5 * g.spacing[a];  // boundary edge below the first site
        if (inside(mid)) acc[0] += m2 * z.inv_h2[a];
      }
      mid[a] = p[a];
    }
  });

  const double vol = g.volume_element();
  EnergyBreakdown e;
  e.kinetic_raw = sums[0] * vol;
  e.mass = sums[1] * vol;
  e.quartic = sums[2] * vol;
  e.b = b;
  e.total = b * e.kinetic_raw + e.mass + e.quartic;
  return e;
}

}  // namespace gll
