#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gll/links.hpp"

using namespace gll;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid construction and flux bookkeeping") {
  const double R1 = std::sqrt(2.0 * kPi);
  Grid g = build_grid({R1, R1}, {32, 32}, Bc::MagneticPeriodic);
  CHECK(g.flux_quanta == 1);
  CHECK(g.spacing[0] == doctest::Approx(R1 / 32).epsilon(1e-14));

  Grid g2 = build_grid({std::sqrt(4.0 * kPi), std::sqrt(4.0 * kPi)}, {32, 32}, Bc::MagneticPeriodic);
  CHECK(g2.flux_quanta == 2);

  CHECK_THROWS_AS(build_grid({3.0, 3.0}, {32, 32}, Bc::MagneticPeriodic), NonQuantizedFlux);
  CHECK_THROWS_AS(build_grid({4.0, 4.0}, {1, 8}, Bc::Dirichlet), InvalidCounts);
  CHECK_THROWS_AS(build_grid({-1.0, 4.0}, {8, 8}, Bc::Dirichlet), InvalidCounts);

  // Dirichlet spacing convention: h (counts + 1) = extent
  Grid gd = build_grid({8.0, 8.0}, {31, 31}, Bc::Dirichlet);
  CHECK(gd.spacing[0] * (gd.counts[0] + 1) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("link phases: modulus, z-links, plaquettes") {
  const double R = std::sqrt(8.0 * kPi);
  Grid g = build_grid({R, R, R}, {12, 12, 12}, Bc::MagneticPeriodic);
  GaugeLinks links = link_phases(g, Potential::SymmetricGauge3D);

  for (int a = 0; a < 3; ++a)
    for (const cxd& u : links.link[a]) CHECK(std::abs(std::abs(u) - 1.0) < 1e-14);

  // zero third component: every x3 link is exactly 1
  for (const cxd& u : links.link[2]) {
    CHECK(u.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }

  CHECK_THROWS_AS(link_phases(g, Potential::SymmetricGauge2D), DimensionMismatch);
}

TEST_CASE("plaquette phase equals the four exact line integrals") {
  const double R = std::sqrt(4.0 * kPi);
  const int n = 16;
  Grid g = build_grid({R, R}, {n, n}, Bc::MagneticPeriodic);
  GaugeLinks links = link_phases(g, Potential::SymmetricGauge2D);
  const double h = g.spacing[0];

  // oracle: A1 = -x2/2 and A2 = x1/2 integrated along the four edges of the
  // plaquette with corner (x1, x2) — each integrand is constant on its edge
  auto loop_integral = [&](double x1, double x2) {
    const double bottom = -0.5 * x2 * h;
    const double right = 0.5 * (x1 + h) * h;
    const double top = -(-0.5 * (x2 + h) * h);
    const double left = -(0.5 * x1 * h);
    return bottom + right + top + left;
  };

  for (int j = 0; j < n; j += 3)
    for (int i = 0; i < n; i += 3) {
      const cxd w = plaquette_phase(links, i, j, 0);
      const double expected = -loop_integral(g.position(0, i), g.position(1, j));
      // interior plaquettes carry exactly the enclosed flux h^2
      if (i + 1 < n && j + 1 < n) {
        CHECK(std::arg(w) == doctest::Approx(-h * h).epsilon(1e-12));
        CHECK(std::arg(w) == doctest::Approx(expected).epsilon(1e-12));
      }
      // every plaquette, seam included, must carry flux h^2 mod 2 pi
      const cxd ref = std::polar(1.0, -h * h);
      CHECK(std::abs(w - ref) < 1e-12);
    }
}

TEST_CASE("cocycle: product of all plaquette phases is 1") {
  for (int quanta : {1, 2, 4}) {
    const double R = std::sqrt(2.0 * kPi * quanta);
    Grid g = build_grid({R, R}, {20, 20}, Bc::MagneticPeriodic);
    GaugeLinks links = link_phases(g, Potential::SymmetricGauge2D);
    cxd prod = 1.0;
    for (int j = 0; j < g.counts[1]; ++j)
      for (int i = 0; i < g.counts[0]; ++i) prod *= plaquette_phase(links, i, j, 0);
    CHECK(std::abs(prod - cxd{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("Dirichlet boundary positions stay strictly inside the domain") {
  Grid g = build_grid({8.0, 8.0}, {15, 15}, Bc::Dirichlet);
  CHECK(g.position(0, 0) > -4.0);
  CHECK(g.position(0, 14) < 4.0);
  CHECK(g.position(0, 0) == doctest::Approx(-4.0 + g.spacing[0]));
}
