#pragma once

#include "gll/field.hpp"
#include "gll/links.hpp"

namespace gll {

// Components of b*|cov grad u|^2 - |u|^2 + 1/2 |u|^4 over the grid domain.
// kinetic_raw is stored unscaled by b, so one evaluation serves both the full
// functional and its linear (quartic-free) sibling.
struct EnergyBreakdown {
  double kinetic_raw = 0.0;  // integral of |(grad - iA)u|^2
  double mass = 0.0;         // -integral of |u|^2
  double quartic = 0.0;      // +1/2 integral of |u|^4
  double b = 0.0;
  double total = 0.0;        // b*kinetic_raw + mass + quartic
};

EnergyBreakdown energy(const ComplexField& field, const GaugeLinks& links, double b);

// Euler-Lagrange residual density dE/d(conj u) per site:
//   b*(P u) + (|u|^2 - 1) u,  P the gauge-covariant five/seven-point operator.
// Vanishes at discrete critical points of `energy`.
ComplexField gradient(const ComplexField& field, const GaugeLinks& links, double b);

// Same quadrature restricted to the box: sites by membership, edges by their
// midpoint. A disjoint tiling therefore splits every sum exactly.
EnergyBreakdown local_energy(const ComplexField& field, const GaugeLinks& links, double b,
                             const Box& box);

// Covariant Laplacian apply out = P u (plain site values, no volume weight).
void apply_operator(const GaugeLinks& links, const cxd* u, cxd* out);

// Quadratic form <u, P u> with volume element; the b-free kinetic integral.
double quadratic_form(const ComplexField& field, const GaugeLinks& links);

}  // namespace gll
