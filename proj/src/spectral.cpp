#include "gll/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "gll/rng.hpp"

namespace gll {

namespace detail {

namespace {

using Vec = std::vector<cxd>;

double nrm(const Vec& x) { return std::sqrt(kernels::norm2_sq(x.size(), x.data())); }

void orthogonalize_against(Vec& w, const std::vector<Vec>& basis) {
  for (const Vec& q : basis) {
    const cxd c = kernels::dot(w.size(), q.data(), w.data());
    kernels::axpy(w.size(), -c, q.data(), w.data());
  }
}

}  // namespace

void lanczos_smallest(const GaugeLinks& links, int k, const EigOptions& opts,
                      std::vector<double>& eigenvalues, std::vector<ComplexField>* vectors) {
  const Grid& grid = links.grid;
  const std::size_t dim = grid.sites();
  if (k < 1 || static_cast<std::size_t>(k) > dim)
    throw Error("lanczos_smallest: bad eigenvalue count");

  double sigma = 2.0;  // spectral bound of the covariant Laplacian plus margin
  for (int a = 0; a < grid.dim; ++a) sigma += 4.0 / (grid.spacing[a] * grid.spacing[a]);

  std::vector<Vec> found;
  std::vector<double> values;
  Vec pu(dim);

  auto apply_b = [&](const Vec& x, Vec& out) {
    apply_operator(links, x.data(), pu.data());
    kernels::map(dim, [&](std::size_t i) { out[i] = sigma * x[i] - pu[i]; });
  };

  for (int round = 0; round < k; ++round) {
    const int m_max = opts.max_lanczos;
    std::vector<Vec> v;
    v.reserve(64);
    std::vector<double> alpha, beta;

    ComplexField start =
        gaussian_field(grid, opts.seed + 0x9E3779B97F4A7C15ULL * (round + 1), 1.0);
    Vec v0 = std::move(start.v);
    orthogonalize_against(v0, found);
    orthogonalize_against(v0, found);
    {
      const double n0 = nrm(v0);
      if (n0 < 1e-14) throw EigsNotConverged("lanczos: start vector annihilated");
      kernels::scale(dim, 1.0 / n0, v0.data());
    }
    v.push_back(std::move(v0));

    double theta = 0.0;
    Eigen::VectorXd ritz_weights;
    bool ok = false;
    Vec w(dim);

    for (int j = 0; j < m_max; ++j) {
      apply_b(v[j], w);
      if (j > 0) kernels::axpy(dim, -beta[j - 1], v[j - 1].data(), w.data());
      const double a = kernels::dot(dim, v[j].data(), w.data()).real();
      alpha.push_back(a);
      kernels::axpy(dim, -a, v[j].data(), w.data());

      // full reorthogonalization (second pass when cancellation is heavy)
      const double before = nrm(w);
      orthogonalize_against(w, v);
      orthogonalize_against(w, found);
      if (nrm(w) < 0.5 * before) {
        orthogonalize_against(w, v);
        orthogonalize_against(w, found);
      }

      const double bnorm = nrm(w);
      const bool exhausted = bnorm <= 1e-13 * sigma;
      beta.push_back(bnorm);

      const int m = j + 1;
      if ((m % 20 == 0) || m == m_max || exhausted) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
          t(i, i) = alpha[i];
          if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const int top = m - 1;  // ascending order; largest of B = smallest of P
        theta = es.eigenvalues()(top);
        ritz_weights = es.eigenvectors().col(top);
        const double resid = bnorm * std::abs(ritz_weights(m - 1));
        if (resid <= opts.tol * sigma || exhausted) {
          ok = true;
          break;
        }
      }
      if (exhausted) break;
      kernels::scale(dim, 1.0 / bnorm, w.data());
      v.push_back(w);
    }
    if (!ok) throw EigsNotConverged("lanczos: no convergence within iteration budget");

    Vec x(dim, cxd{0.0, 0.0});
    for (int i = 0; i < ritz_weights.size(); ++i)
      kernels::axpy(dim, cxd{ritz_weights(i), 0.0}, v[i].data(), x.data());
    orthogonalize_against(x, found);
    const double nx = nrm(x);
    if (nx < 1e-10) throw EigsNotConverged("lanczos: deflated Ritz vector vanished");
    kernels::scale(dim, 1.0 / nx, x.data());
    values.push_back(sigma - theta);
    found.push_back(std::move(x));
  }

  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  eigenvalues.clear();
  if (vectors) vectors->clear();
  for (int i : order) {
    eigenvalues.push_back(values[i]);
    if (vectors) {
      ComplexField f(grid);
      f.v = std::move(found[i]);
      vectors->push_back(std::move(f));
    }
  }
}

}  // namespace detail

namespace {

std::vector<std::pair<int, int>> cluster_partition(const std::vector<double>& mu, double thr) {
  std::vector<std::pair<int, int>> cl;
  int first = 0;
  for (std::size_t i = 1; i <= mu.size(); ++i) {
    if (i == mu.size() || mu[i] - mu[i - 1] > thr) {
      cl.emplace_back(first, static_cast<int>(i));
      first = static_cast<int>(i);
    }
  }
  return cl;
}

}  // namespace

Spectrum spectrum_2d(double R, int counts, int k, const EigOptions& opts) {
  const Grid grid = build_grid({R, R}, {counts, counts}, Bc::MagneticPeriodic);
  const GaugeLinks links = link_phases(grid, Potential::SymmetricGauge2D);
  Spectrum s;
  s.grid = grid;
  s.cluster_gap_threshold = 0.5;
  detail::lanczos_smallest(links, k, opts, s.eigenvalues, nullptr);
  s.clusters = cluster_partition(s.eigenvalues, s.cluster_gap_threshold);
  return s;
}

Spectrum spectrum_3d(double R, double L, int counts, int k, const EigOptions& opts) {
  if (!(L > 0.0)) throw Error("spectrum_3d: L must be positive");
  Spectrum base = spectrum_2d(R, counts, k, opts);

  // Exact direct-sum reduction: mu_j(2D) + (2 pi n / L)^2 over integer n,
  // truncated once the axial term alone exceeds the spectral window.
  std::vector<double> all;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int n = 0;; ++n) {
    const double axial = (two_pi * n / L) * (two_pi * n / L);
    std::vector<double> window(all);
    std::sort(window.begin(), window.end());
    if (static_cast<int>(window.size()) >= k && axial > window[k - 1]) break;
    for (double mu : base.eigenvalues) {
      all.push_back(mu + axial);
      if (n > 0) all.push_back(mu + axial);  // +n and -n
    }
    if (n > 4096) break;
  }
  std::sort(all.begin(), all.end());
  if (static_cast<int>(all.size()) > k) all.resize(k);

  Spectrum s;
  s.grid = base.grid;
  s.cluster_gap_threshold = base.cluster_gap_threshold;
  s.eigenvalues = std::move(all);
  s.clusters = cluster_partition(s.eigenvalues, s.cluster_gap_threshold);
  return s;
}

LLLBasis lll_basis(double R, int counts, double cluster_tol, const EigOptions& opts) {
  const Grid grid = build_grid({R, R}, {counts, counts}, Bc::MagneticPeriodic);
  const GaugeLinks links = link_phases(grid, Potential::SymmetricGauge2D);
  const int n = grid.flux_quanta;
  const int k = n + 2 <= static_cast<int>(grid.sites()) ? n + 2 : n + 1;

  std::vector<double> mu;
  std::vector<ComplexField> vec;
  detail::lanczos_smallest(links, k, opts, mu, &vec);

  int csize = 0;
  while (csize < static_cast<int>(mu.size()) && mu[csize] < 2.0) ++csize;
  if (csize != n)
    throw WrongDegeneracy("lll_basis: lowest cluster has " + std::to_string(csize) +
                          " members, expected " + std::to_string(n) +
                          " (under-resolved grid?)");
  if (csize >= static_cast<int>(mu.size()) || mu[csize - 1] + cluster_tol >= mu[csize])
    throw ClusterNotSeparated("lll_basis: cluster not separated from the rest");

  LLLBasis basis;
  basis.grid = grid;
  basis.dimension = n;
  basis.eigenvalues.assign(mu.begin(), mu.begin() + n);
  basis.max_eigenvalue_deviation = 0.0;
  for (int i = 0; i < n; ++i)
    basis.max_eigenvalue_deviation = std::max(basis.max_eigenvalue_deviation, std::abs(mu[i] - 1.0));

  // modified Gram-Schmidt in the weighted inner product, two sweeps
  basis.f.clear();
  for (int i = 0; i < n; ++i) {
    ComplexField fi = std::move(vec[i]);
    for (int sweep = 0; sweep < 2; ++sweep)
      for (const ComplexField& fj : basis.f) {
        const cxd c = wdot(fj, fi);
        kernels::axpy(fi.size(), -c, fj.data(), fi.data());
      }
    const double nn = std::sqrt(wnorm2_sq(fi));
    kernels::scale(fi.size(), 1.0 / nn, fi.data());
    basis.f.push_back(std::move(fi));
  }
  return basis;
}

std::shared_ptr<const LLLBasis> lll_basis_cached(double R, int counts, double cluster_tol,
                                                 const EigOptions& opts) {
  static std::mutex mu;
  static std::map<std::tuple<long long, int, std::uint64_t>, std::shared_ptr<const LLLBasis>> memo;
  const auto key = std::make_tuple(std::llround(R * 1e9), counts, opts.seed);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  auto basis = std::make_shared<const LLLBasis>(lll_basis(R, counts, cluster_tol, opts));
  std::lock_guard<std::mutex> lk(mu);
  memo.emplace(key, basis);
  return basis;
}

ComplexField project_lll(const ComplexField& field, const LLLBasis& basis) {
  const Grid& bg = basis.grid;
  const Grid& fg = field.grid;
  const bool cross_section_match =
      fg.counts[0] == bg.counts[0] && fg.counts[1] == bg.counts[1] &&
      std::abs(fg.extent[0] - bg.extent[0]) < 1e-12 &&
      std::abs(fg.extent[1] - bg.extent[1]) < 1e-12 && fg.bc == Bc::MagneticPeriodic;
  if (!cross_section_match)
    throw GridMismatch("project_lll: field cross-section does not match the basis grid");

  ComplexField out(fg);
  const std::size_t slice = static_cast<std::size_t>(fg.counts[0]) * fg.counts[1];
  const double w2 = bg.spacing[0] * bg.spacing[1];
  const int nz = fg.dim == 3 ? fg.counts[2] : 1;
  for (int z = 0; z < nz; ++z) {
    const cxd* uz = field.data() + slice * z;
    cxd* oz = out.data() + slice * z;
    for (int m = 0; m < basis.dimension; ++m) {
      const cxd* fm = basis.f[m].data();
      const cxd c = w2 * kernels::dot(slice, fm, uz);
      kernels::axpy(slice, c, fm, oz);
    }
  }
  return out;
}

double gap_defect(const ComplexField& field, const LLLBasis& basis, double gamma, int p) {
  if (p != 2 && p != 4 && p != 6) throw Error("gap_defect: p must be one of 2, 4, 6");
  if (!(gamma > 0.0)) throw Error("gap_defect: gamma must be positive");

  const GaugeLinks links = link_phases(
      field.grid, field.grid.dim == 2 ? Potential::SymmetricGauge2D : Potential::SymmetricGauge3D);
  const double q = quadratic_form(field, links);
  const double l2sq = wnorm2_sq(field);
  if (q - (1.0 + gamma) * l2sq > 1e-12 * (1.0 + q))
    throw HypothesisViolated("gap_defect: quadratic form exceeds (1+gamma) mass");

  ComplexField proj = project_lll(field, basis);
  ComplexField diff(field.grid);
  kernels::map(diff.size(), [&](std::size_t i) { diff.v[i] = field.v[i] - proj.v[i]; });
  return wnorm_p(diff, p) / (std::sqrt(gamma) * std::sqrt(l2sq));
}

}  // namespace gll
