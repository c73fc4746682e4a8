#pragma once

#include <memory>

#include "gll/field.hpp"

namespace gll {

// Sobolev-gradient preconditioner (c - b*Laplacian)^-1 for the descent
// solvers, applied spectrally: DST-I on Dirichlet grids, DFT on periodic
// ones. The plain (phase-free) Laplacian is used; it only reshapes the
// descent metric, the converged state is still a critical point of the
// exact discrete energy.
class SpectralPreconditioner {
 public:
  SpectralPreconditioner(const Grid& grid, double b, double shift);
  ~SpectralPreconditioner();

  SpectralPreconditioner(const SpectralPreconditioner&) = delete;
  SpectralPreconditioner& operator=(const SpectralPreconditioner&) = delete;

  void apply(const ComplexField& in, ComplexField& out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gll
