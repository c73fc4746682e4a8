#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "gll/energy.hpp"
#include "gll/field.hpp"

namespace gll {

struct EigOptions {
  int max_lanczos = 700;
  double tol = 1e-10;  // residual tolerance relative to the spectral bound
  std::uint64_t seed = 1;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  // Half-open index ranges [first, last) of near-degenerate clusters,
  // split where the gap to the next eigenvalue exceeds the threshold.
  std::vector<std::pair<int, int>> clusters;
  double cluster_gap_threshold = 0.0;
  Grid grid;
};

// k smallest eigenvalues of the quasi-periodic Landau operator on the square
// torus of side R (R^2/2pi integer), via deflated Lanczos with full
// reorthogonalization on the shifted operator. Deterministic given the seed.
Spectrum spectrum_2d(double R, int counts, int k, const EigOptions& opts = {});

// Direct-sum spectrum {mu_j(2D) + (2 pi n / L)^2 : n in Z}, assembled exactly
// from the stored 2D eigenvalues; never a 3D eigensolve.
Spectrum spectrum_3d(double R, double L, int counts, int k, const EigOptions& opts = {});

struct LLLBasis {
  Grid grid;                       // 2D magnetic-periodic cross-section
  int dimension = 0;               // = flux quanta
  std::vector<ComplexField> f;     // orthonormal in the weighted inner product
  std::vector<double> eigenvalues;
  double max_eigenvalue_deviation = 0.0;  // cluster spread around 1
};

// Orthonormal basis of the lowest eigenvalue cluster. The cluster is read
// below the midpoint threshold 2 of the exact [1,3] gap; its size must equal
// the flux quanta count, anything else signals an under-resolved grid.
LLLBasis lll_basis(double R, int counts, double cluster_tol, const EigOptions& opts = {});

// Process-wide memo over (R, counts, seed); bases are immutable and shared
// freely between the sweeps that reuse them.
std::shared_ptr<const LLLBasis> lll_basis_cached(double R, int counts, double cluster_tol,
                                                 const EigOptions& opts = {});

// Orthogonal projection onto span(basis); 3D fields are projected slice by
// slice in x3 with the 2D cross-section inner product.
ComplexField project_lll(const ComplexField& field, const LLLBasis& basis);

// Lemma-style defect ||u - P u||_p / (sqrt(gamma) ||u||_2) for fields obeying
// Q(u) <= (1+gamma) ||u||_2^2; p in {2,4,6}.
double gap_defect(const ComplexField& field, const LLLBasis& basis, double gamma, int p);

namespace detail {
// Smallest k eigenpairs of the covariant Laplacian defined by `links`.
void lanczos_smallest(const GaugeLinks& links, int k, const EigOptions& opts,
                      std::vector<double>& eigenvalues, std::vector<ComplexField>* vectors);
}  // namespace detail

}  // namespace gll
