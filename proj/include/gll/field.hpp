#pragma once

#include <complex>
#include <vector>

#include "gll/grid.hpp"
#include "gll/kernels.hpp"

namespace gll {

using cxd = std::complex<double>;

// Complex values on grid sites; the discrete order parameter.
struct ComplexField {
  Grid grid;
  std::vector<cxd> v;

  ComplexField() = default;
  explicit ComplexField(const Grid& g) : grid(g), v(g.sites(), cxd{0.0, 0.0}) {}

  std::size_t size() const { return v.size(); }
  cxd* data() { return v.data(); }
  const cxd* data() const { return v.data(); }
};

// Quadrature-weighted norms and inner products (volume element included).
double wnorm2_sq(const ComplexField& f);            // integral of |u|^2
double wnorm4_4(const ComplexField& f);             // integral of |u|^4
double wnorm_p(const ComplexField& f, int p);       // L^p norm, p in {2,4,6}
cxd wdot(const ComplexField& a, const ComplexField& b);
double max_abs(const ComplexField& f);
bool all_finite(const ComplexField& f);

}  // namespace gll
