#include "gll/grid.hpp"

#include <cmath>
#include <numbers>

namespace gll {

Grid build_grid(const std::vector<double>& extents, const std::vector<int>& counts, Bc bc) {
  if (extents.size() != counts.size() || (extents.size() != 2 && extents.size() != 3))
    throw InvalidCounts("build_grid: extents/counts must both have 2 or 3 entries");

  Grid g;
  g.dim = static_cast<int>(extents.size());
  g.bc = bc;
  for (int a = 0; a < g.dim; ++a) {
    if (!(extents[a] > 0.0)) throw InvalidCounts("build_grid: extents must be positive");
    if (counts[a] < 2) throw InvalidCounts("build_grid: counts must be >= 2 per axis");
    g.extent[a] = extents[a];
    g.counts[a] = counts[a];
    g.spacing[a] = bc == Bc::Dirichlet ? extents[a] / (counts[a] + 1) : extents[a] / counts[a];
  }

  if (bc == Bc::MagneticPeriodic) {
    if (g.dim == 3 && std::abs(g.extent[0] - g.extent[1]) > 1e-12 * g.extent[0])
      throw InvalidCounts("build_grid: magnetic-periodic cross-section must be square");
    const double q = g.extent[0] * g.extent[0] / (2.0 * std::numbers::pi);
    const double qr = std::round(q);
    if (qr < 0.5 || std::abs(q - qr) > 1e-9 * std::max(1.0, q))
      throw NonQuantizedFlux("build_grid: R^2/2pi must be a positive integer, got " +
                             std::to_string(q));
    g.flux_quanta = static_cast<int>(qr);
  }
  return g;
}

}  // namespace gll
