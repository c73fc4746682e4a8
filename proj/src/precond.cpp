#include "gll/precond.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace gll {

struct SpectralPreconditioner::Impl {
  Grid grid;
  bool periodic = false;
  std::vector<double> weight;  // 1 / (c + b*lambda(k)), includes transform norm
  // Dirichlet path: DST-I on interleaved re/im planes
  fftw_plan r2r_plan = nullptr;
  std::vector<double> rbuf;
  // periodic path: complex DFT on a flat re/im buffer
  fftw_plan fwd = nullptr, bwd = nullptr;
  std::vector<double> cbuf;

  ~Impl() {
    if (r2r_plan) fftw_destroy_plan(r2r_plan);
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

SpectralPreconditioner::SpectralPreconditioner(const Grid& grid, double b, double shift)
    : impl_(std::make_unique<Impl>()) {
  Impl& im = *impl_;
  im.grid = grid;
  im.periodic = grid.bc == Bc::MagneticPeriodic;
  const std::size_t n = grid.sites();

  // per-axis 1D eigenvalues of the plain Laplacian
  std::vector<std::vector<double>> lam(3);
  for (int a = 0; a < 3; ++a) {
    const int na = grid.counts[a];
    lam[a].assign(na, 0.0);
    if (a >= grid.dim) continue;
    const double inv_h2 = 1.0 / (grid.spacing[a] * grid.spacing[a]);
    for (int k = 0; k < na; ++k) {
      const double phase = im.periodic ? 2.0 * std::numbers::pi * k / na
                                       : std::numbers::pi * (k + 1) / (na + 1);
      lam[a][k] = 2.0 * inv_h2 * (1.0 - std::cos(phase));
    }
  }

  double norm = 1.0;
  for (int a = 0; a < grid.dim; ++a)
    norm *= im.periodic ? static_cast<double>(grid.counts[a]) : 2.0 * (grid.counts[a] + 1.0);

  im.weight.resize(n);
  for (int k = 0; k < grid.counts[2]; ++k)
    for (int j = 0; j < grid.counts[1]; ++j)
      for (int i = 0; i < grid.counts[0]; ++i)
        im.weight[grid.index(i, j, k)] =
            1.0 / ((shift + b * (lam[0][i] + lam[1][j] + lam[2][k])) * norm);

  const int nx = grid.counts[0], ny = grid.counts[1], nz = grid.counts[2];
  if (im.periodic) {
    im.cbuf.resize(2 * n);
    fftw_complex* cb = reinterpret_cast<fftw_complex*>(im.cbuf.data());
    // row-major dims for FFTW: slowest first (z, y, x)
    if (grid.dim == 3) {
      im.fwd = fftw_plan_dft_3d(nz, ny, nx, cb, cb, FFTW_FORWARD, FFTW_ESTIMATE);
      im.bwd = fftw_plan_dft_3d(nz, ny, nx, cb, cb, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      im.fwd = fftw_plan_dft_2d(ny, nx, cb, cb, FFTW_FORWARD, FFTW_ESTIMATE);
      im.bwd = fftw_plan_dft_2d(ny, nx, cb, cb, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  } else {
    im.rbuf.resize(2 * n);
    // interleaved re/im as two strided r2r transforms
    int dims_arr[3] = {nz, ny, nx};
    fftw_r2r_kind kinds[3] = {FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
    const int rank = grid.dim;
    int* dims = grid.dim == 3 ? dims_arr : dims_arr + 1;
    fftw_iodim iod[3];
    std::size_t stride = 2 * n;
    for (int d = 0; d < rank; ++d) {
      stride /= dims[d];
      iod[d].n = dims[d];
      iod[d].is = static_cast<int>(stride);
      iod[d].os = static_cast<int>(stride);
    }
    fftw_iodim howmany;
    howmany.n = 2;
    howmany.is = 1;
    howmany.os = 1;
    im.r2r_plan = fftw_plan_guru_r2r(rank, iod, 1, &howmany, im.rbuf.data(), im.rbuf.data(),
                                     kinds, FFTW_ESTIMATE);
  }
}

SpectralPreconditioner::~SpectralPreconditioner() = default;

void SpectralPreconditioner::apply(const ComplexField& in, ComplexField& out) const {
  const Impl& im = *impl_;
  const std::size_t n = im.grid.sites();
  if (im.periodic) {
    double* b = const_cast<double*>(im.cbuf.data());
    for (std::size_t s = 0; s < n; ++s) {
      b[2 * s] = in.v[s].real();
      b[2 * s + 1] = in.v[s].imag();
    }
    fftw_execute(im.fwd);
    for (std::size_t s = 0; s < n; ++s) {
      b[2 * s] *= im.weight[s];
      b[2 * s + 1] *= im.weight[s];
    }
    fftw_execute(im.bwd);
    for (std::size_t s = 0; s < n; ++s) out.v[s] = {b[2 * s], b[2 * s + 1]};
  } else {
    double* b = const_cast<double*>(im.rbuf.data());
    for (std::size_t s = 0; s < n; ++s) {
      b[2 * s] = in.v[s].real();
      b[2 * s + 1] = in.v[s].imag();
    }
    fftw_execute(im.r2r_plan);
    for (std::size_t s = 0; s < n; ++s) {
      b[2 * s] *= im.weight[s];
      b[2 * s + 1] *= im.weight[s];
    }
    fftw_execute(im.r2r_plan);
    for (std::size_t s = 0; s < n; ++s) out.v[s] = {b[2 * s], b[2 * s + 1]};
  }
}

}  // namespace gll
