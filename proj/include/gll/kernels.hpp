#pragma once

// Data-parallel inner loops shared by the energy, solver and eigensolver code.
//
// All reductions run over a fixed block decomposition of the index range and
// accumulate block partials in block order, so results are bitwise identical
// for any OpenMP thread count (including an OpenMP-free build). A plain
// serial implementation of each reduction lives in kernels::serial_ref; it is
// kept as the reference the parallel versions are tested and benchmarked
// against.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace gll::kernels {

using cxd = std::complex<double>;

inline constexpr std::size_t kBlock = 8192;

void set_threads(int n);
int threads();

template <class F>
double sum(std::size_t n, F&& f) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  if (nb <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f(i);
    return s;
  }
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

// Reduction producing K doubles at once (kinetic / mass / quartic style).
template <std::size_t K, class F>
std::array<double, K> sum_multi(std::size_t n, F&& f) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  std::array<double, K> total{};
  if (nb <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i, total);
    return total;
  }
  std::vector<std::array<double, K>> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    std::array<double, K> s{};
    for (std::size_t i = lo; i < hi; ++i) f(i, s);
    partial[static_cast<std::size_t>(b)] = s;
  }
  for (const auto& p : partial)
    for (std::size_t k = 0; k < K; ++k) total[k] += p[k];
  return total;
}

// Max-reduction; order-independent, so a plain loop per block is fine.
template <class F>
double max(std::size_t n, F&& f) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  if (nb <= 1) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = f(i);
      if (v > m) m = v;
    }
    return m;
  }
  std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double v = f(i);
      if (v > m) m = v;
    }
    partial[static_cast<std::size_t>(b)] = m;
  }
  double m = 0.0;
  for (double p : partial)
    if (p > m) m = p;
  return m;
}

// Elementwise map, no reduction involved.
template <class F>
void map(std::size_t n, F&& f) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    f(static_cast<std::size_t>(i));
}

inline cxd dot(std::size_t n, const cxd* x, const cxd* y) {
  auto s = sum_multi<2>(n, [&](std::size_t i, std::array<double, 2>& a) {
    const cxd v = std::conj(x[i]) * y[i];
    a[0] += v.real();
    a[1] += v.imag();
  });
  return {s[0], s[1]};
}

inline double norm2_sq(std::size_t n, const cxd* x) {
  return sum(n, [&](std::size_t i) { return std::norm(x[i]); });
}

inline double norm4_4(std::size_t n, const cxd* x) {
  return sum(n, [&](std::size_t i) {
    const double m = std::norm(x[i]);
    return m * m;
  });
}

inline double norm_inf(std::size_t n, const cxd* x) {
  return std::sqrt(max(n, [&](std::size_t i) { return std::norm(x[i]); }));
}

inline void axpy(std::size_t n, cxd a, const cxd* x, cxd* y) {
  map(n, [&](std::size_t i) { y[i] += a * x[i]; });
}

inline void scale(std::size_t n, double a, cxd* x) {
  map(n, [&](std::size_t i) { x[i] *= a; });
}

namespace serial_ref {

// Naive single-accumulator loops; retained as the test/benchmark reference.

template <class F>
double sum(std::size_t n, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += f(i);
  return s;
}

inline cxd dot(std::size_t n, const cxd* x, const cxd* y) {
  cxd s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline double norm2_sq(std::size_t n, const cxd* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
  return s;
}

inline double norm4_4(std::size_t n, const cxd* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::norm(x[i]);
    s += m * m;
  }
  return s;
}

}  // namespace serial_ref

}  // namespace gll::kernels
