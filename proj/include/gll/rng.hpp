#pragma once

#include <cstdint>
#include <random>

#include "gll/field.hpp"

namespace gll {

// mt19937_64 with an explicit uniform/Gaussian mapping so streams depend only
// on the seed, not on library-specific distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // (0,1]
    const std::uint64_t r = eng_();
    double u = static_cast<double>(r >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cxd gaussian_cx() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * 0.7071067811865476, im * 0.7071067811865476};
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Complex Gaussian field with E|u|^2 = amp^2 per site.
ComplexField gaussian_field(const Grid& grid, std::uint64_t seed, double amp);

}  // namespace gll
