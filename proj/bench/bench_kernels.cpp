// Timing comparison of the blocked (OpenMP) kernels against the plain serial
// reference loops, over the grid sizes the solvers actually use.

#include <chrono>
#include <cstdio>
#include <numbers>

#include "gll/energy.hpp"
#include "gll/glmin.hpp"
#include "gll/rng.hpp"

using namespace gll;

namespace {

template <class F>
double time_of(F&& fn, int reps) {
  fn();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.3f us %10.3f us   x%.2f\n", name, serial * 1e6, parallel * 1e6,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernels::threads());
  std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "blocked", "speedup");

  {
    const double R = std::sqrt(2.0 * std::numbers::pi * 4.0);
    const Grid g = build_grid({R, R}, {64, 64}, Bc::MagneticPeriodic);
    const GaugeLinks links = link_phases(g, Potential::SymmetricGauge2D);
    ComplexField u = gaussian_field(g, 7, 1.0);
    ComplexField out(g);
    volatile double sink = 0.0;

    row("norm2 64x64",
        time_of([&] { sink = kernels::serial_ref::norm2_sq(u.size(), u.data()); }, 200),
        time_of([&] { sink = kernels::norm2_sq(u.size(), u.data()); }, 200));
    row("norm4 64x64",
        time_of([&] { sink = kernels::serial_ref::norm4_4(u.size(), u.data()); }, 200),
        time_of([&] { sink = kernels::norm4_4(u.size(), u.data()); }, 200));
    row("energy 64x64 (blocked only)", time_of([&] { sink = energy(u, links, 0.9).total; }, 100),
        time_of([&] { sink = energy(u, links, 0.9).total; }, 100));
    row("stencil 64x64 (blocked only)",
        time_of([&] { apply_operator(links, u.data(), out.data()); }, 100),
        time_of([&] { apply_operator(links, u.data(), out.data()); }, 100));
    (void)sink;
  }

  {
    const Grid g = build_grid({12.0, 12.0, 12.0}, {48, 48, 48}, Bc::Dirichlet);
    const GaugeLinks links = link_phases(g, Potential::SymmetricGauge3D);
    ComplexField u = gaussian_field(g, 7, 0.3);
    ComplexField out(g);
    volatile double sink = 0.0;

    row("norm2 48^3",
        time_of([&] { sink = kernels::serial_ref::norm2_sq(u.size(), u.data()); }, 50),
        time_of([&] { sink = kernels::norm2_sq(u.size(), u.data()); }, 50));
    row("energy 48^3 (blocked only)", time_of([&] { sink = energy(u, links, 0.9).total; }, 20),
        time_of([&] { sink = energy(u, links, 0.9).total; }, 20));
    row("stencil 48^3 (blocked only)",
        time_of([&] { apply_operator(links, u.data(), out.data()); }, 20),
        time_of([&] { apply_operator(links, u.data(), out.data()); }, 20));
    (void)sink;
  }
  return 0;
}
