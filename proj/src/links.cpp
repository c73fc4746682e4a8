#include "gll/links.hpp"

#include <cmath>

namespace gll {

namespace {

// Exact line integral of the symmetric-gauge potential along the +axis edge
// starting at (x1, x2): the relevant component is constant on the edge.
double edge_integral(int axis, double x1, double x2, double h) {
  if (axis == 0) return -0.5 * x2 * h;  // A_1 = -x2/2
  if (axis == 1) return 0.5 * x1 * h;   // A_2 = x1/2
  return 0.0;                           // A_3 = 0
}

}  // namespace

GaugeLinks link_phases(const Grid& grid, Potential potential) {
  if (potential == Potential::SymmetricGauge2D && grid.dim != 2)
    throw DimensionMismatch("link_phases: 2D potential on non-2D grid");
  if (potential == Potential::SymmetricGauge3D && grid.dim != 3)
    throw DimensionMismatch("link_phases: 3D potential on non-3D grid");

  GaugeLinks links;
  links.grid = grid;
  links.tag = potential;

  const int nx = grid.counts[0], ny = grid.counts[1], nz = grid.counts[2];
  const double R = grid.extent[0];
  for (int a = 0; a < grid.dim; ++a) links.link[a].assign(grid.sites(), cxd{1.0, 0.0});

  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::size_t s = grid.index(i, j, k);
        const double x1 = grid.position(0, i);
        const double x2 = grid.position(1, j);
        for (int a = 0; a < grid.dim; ++a) {
          double phase = -edge_integral(a, x1, x2, grid.spacing[a]);
          if (grid.bc == Bc::MagneticPeriodic) {
            // Wrap edges absorb the magnetic-translation identification
            // u(x + R e1) = exp(i R x2 / 2) u(x),  u(x + R e2) = exp(-i R x1 / 2) u(x).
            if (a == 0 && i == nx - 1) phase += 0.5 * R * x2;
            if (a == 1 && j == ny - 1) phase -= 0.5 * R * x1;
          }
          links.link[a][s] = std::polar(1.0, phase);
        }
      }
  return links;
}

cxd plaquette_phase(const GaugeLinks& links, int i, int j, int k) {
  const Grid& g = links.grid;
  const int nx = g.counts[0], ny = g.counts[1];
  const int ip = (i + 1) % nx, jp = (j + 1) % ny;
  const cxd u1 = links.link[0][g.index(i, j, k)];
  const cxd u2 = links.link[1][g.index(ip, j, k)];
  const cxd u3 = links.link[0][g.index(i, jp, k)];
  const cxd u4 = links.link[1][g.index(i, j, k)];
  return u1 * u2 * std::conj(u3) * std::conj(u4);
}

std::pair<ComplexField, GaugeLinks> gauge_transform(const ComplexField& field,
                                                    const GaugeLinks& links,
                                                    const std::vector<double>& theta) {
  const Grid& g = links.grid;
  if (field.grid != g) throw GridMismatch("gauge_transform: field grid differs from links");
  if (theta.size() != g.sites()) throw GridMismatch("gauge_transform: phase size mismatch");

  ComplexField out(g);
  kernels::map(g.sites(), [&](std::size_t s) { out.v[s] = std::polar(1.0, theta[s]) * field.v[s]; });

  GaugeLinks lout = links;
  const int nx = g.counts[0], ny = g.counts[1], nz = g.counts[2];
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::size_t s = g.index(i, j, k);
        const int c[3] = {i, j, k};
        for (int a = 0; a < g.dim; ++a) {
          double th_head = 0.0;  // Dirichlet boundary sites carry theta = 0
          if (c[a] + 1 < g.counts[a]) {
            const int ii = a == 0 ? i + 1 : i, jj = a == 1 ? j + 1 : j, kk = a == 2 ? k + 1 : k;
            th_head = theta[g.index(ii, jj, kk)];
          } else if (g.bc == Bc::MagneticPeriodic) {
            const int ii = a == 0 ? 0 : i, jj = a == 1 ? 0 : j, kk = a == 2 ? 0 : k;
            th_head = theta[g.index(ii, jj, kk)];
          }
          // U u(head) must transform like u(tail).
          lout.link[a][s] = std::polar(1.0, theta[s] - th_head) * links.link[a][s];
        }
      }
  return {std::move(out), std::move(lout)};
}

}  // namespace gll
