#pragma once

#include <array>
#include <complex>
#include <vector>

#include "gll/field.hpp"
#include "gll/grid.hpp"

namespace gll {

// The two constant-curl potentials used throughout: the symmetric gauge
// (-x2/2, x1/2) in the plane, extended by a zero third component in 3D.
enum class Potential { SymmetricGauge2D, SymmetricGauge3D, Custom };

// Per-edge unit-modulus phases exp(-i \int_edge A . dl). link[a][s] sits on
// the edge from site s in the +a direction; on magnetic-periodic grids the
// wrap edges additionally carry the magnetic-translation boundary phase, so
// plaquette products encode the full quantized flux.
struct GaugeLinks {
  Grid grid;
  Potential tag = Potential::Custom;
  std::array<std::vector<cxd>, 3> link;

  const cxd* axis(int a) const { return link[a].data(); }
};

GaugeLinks link_phases(const Grid& grid, Potential potential);

// Phase of the plaquette holonomy with lower-left corner at site (i,j) in the
// plane of axes (0,1), slice k. Used by the flux-quantization checks.
cxd plaquette_phase(const GaugeLinks& links, int i, int j, int k);

// u -> exp(i theta) u with the links co-rotated so every energy is unchanged.
std::pair<ComplexField, GaugeLinks> gauge_transform(const ComplexField& field,
                                                    const GaugeLinks& links,
                                                    const std::vector<double>& theta);

}  // namespace gll
