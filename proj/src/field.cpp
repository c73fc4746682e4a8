#include "gll/field.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gll/errors.hpp"

namespace gll {

namespace kernels {

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels

double wnorm2_sq(const ComplexField& f) {
  return f.grid.volume_element() * kernels::norm2_sq(f.size(), f.data());
}

double wnorm4_4(const ComplexField& f) {
  return f.grid.volume_element() * kernels::norm4_4(f.size(), f.data());
}

double wnorm_p(const ComplexField& f, int p) {
  if (p == 2) return std::sqrt(wnorm2_sq(f));
  if (p == 4) return std::pow(wnorm4_4(f), 0.25);
  if (p == 6) {
    const double s = kernels::sum(f.size(), [&](std::size_t i) {
      const double m = std::norm(f.v[i]);
      return m * m * m;
    });
    return std::pow(f.grid.volume_element() * s, 1.0 / 6.0);
  }
  throw Error("wnorm_p: p must be one of 2, 4, 6");
}

cxd wdot(const ComplexField& a, const ComplexField& b) {
  if (a.grid != b.grid) throw GridMismatch("wdot: grids differ");
  return a.grid.volume_element() * kernels::dot(a.size(), a.data(), b.data());
}

double max_abs(const ComplexField& f) { return kernels::norm_inf(f.size(), f.data()); }

bool all_finite(const ComplexField& f) {
  for (const cxd& z : f.v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace gll
