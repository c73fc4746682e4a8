#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gll/errors.hpp"

namespace gll {

enum class Bc { Dirichlet, MagneticPeriodic };

// Rectangular site lattice over a square (2D) or box (3D) domain centered at
// the origin. Dirichlet grids hold interior sites only, the boundary value is
// an implicit hard zero; magnetic-periodic grids identify opposite faces up
// to magnetic translation phases (carried by the gauge links, not the grid).
struct Grid {
  int dim = 2;
  std::array<int, 3> counts{1, 1, 1};          // sites per axis, z = 1 in 2D
  std::array<double, 3> extent{0.0, 0.0, 0.0};  // side lengths
  std::array<double, 3> spacing{0.0, 0.0, 0.0};
  Bc bc = Bc::Dirichlet;
  int flux_quanta = 0;  // cross-section R^2 / 2pi; 0 for Dirichlet

  std::size_t sites() const {
    return static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * counts[1] + j) * counts[0] + i;
  }
  // Coordinate of site index m along `axis`.
  double position(int axis, int m) const {
    const double lo = -0.5 * extent[axis];
    return bc == Bc::Dirichlet ? lo + (m + 1) * spacing[axis]
                               : lo + m * spacing[axis];
  }
  double volume_element() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= spacing[a];
    return v;
  }
  bool operator==(const Grid&) const = default;
};

// Axis-aligned sub-box given by center and half extents.
struct Box {
  std::array<double, 3> center{0.0, 0.0, 0.0};
  std::array<double, 3> half{0.0, 0.0, 0.0};
};

// extents/counts sized 2 or 3. Magnetic-periodic grids require a square
// cross-section with an integer number of flux quanta.
Grid build_grid(const std::vector<double>& extents, const std::vector<int>& counts, Bc bc);

}  // namespace gll
