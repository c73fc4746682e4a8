#include "gll/rng.hpp"

namespace gll {

ComplexField gaussian_field(const Grid& grid, std::uint64_t seed, double amp) {
  ComplexField f(grid);
  Rng rng(seed);
  for (std::size_t s = 0; s < f.size(); ++s) f.v[s] = amp * rng.gaussian_cx();
  return f;
}

}  // namespace gll
