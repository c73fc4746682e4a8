#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "gll/energy.hpp"
#include "gll/field.hpp"

namespace gll {

enum class StepRule { Fixed, AdaptiveTwoPoint };

struct SolverConfig {
  int max_iterations = 50000;
  double grad_tolerance = 1e-8;  // on ||r||_inf relative to ||u||_inf
  StepRule step_rule = StepRule::AdaptiveTwoPoint;
  int restarts = 1;
  std::uint64_t seed = 1;
};

struct Provenance {
  double b = 0.0;
  double R = 0.0;
  double L = 0.0;  // 0 when not a 3D box
  std::array<int, 3> counts{0, 0, 0};
  std::uint64_t seed = 0;
  double grad_tolerance = 0.0;
};

struct MinResult {
  double value = 0.0;  // achieved energy (or quotient value)
  ComplexField field;
  EnergyBreakdown breakdown;
  double residual = 0.0;  // final relative sup-norm of the gradient
  int iterations = 0;
  bool converged = false;
  Provenance provenance;
};

namespace detail {

// Barzilai-Borwein descent with a periodic monotone safeguard on a functional
// given by its value and gradient callbacks. `post_step` (optional) is applied
// to the iterate after every step, e.g. an L^4 renormalization.
struct DescentProblem {
  std::function<double(const ComplexField&)> value;
  std::function<void(const ComplexField&, ComplexField&)> grad;
  std::function<void(ComplexField&)> post_step;  // may be empty
  // optional Sobolev-gradient metric: d = M r; plain descent when empty
  std::function<void(const ComplexField&, ComplexField&)> precond;
  double safe_step = 1e-3;                       // 1/L fallback step
};

struct DescentOutcome {
  ComplexField u;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  bool collapsed = false;  // iterate decayed to the zero state
};

DescentOutcome bb_descent(const DescentProblem& problem, ComplexField u0,
                          const SolverConfig& cfg, double zero_threshold);

}  // namespace detail

}  // namespace gll
