#pragma once

// Closed-form optimal settings for single-photon cat and squeezed-cat
// generation, and a deterministic grid + pattern-search maximizer.

#include "herald/scheme.hpp"

namespace herald {

/// Smallest r for which the optimal cat transmission lies in (0, 1]:
/// arccoth((3 + sqrt 73) / 8).
double cat_threshold_r();

/// t~(r) = (1/4) sqrt((sqrt 73 - 3) coth r + 8), maximizing the odd-cat
/// (alpha = 2) fidelity at phi = pi. Throws std::domain_error below
/// cat_threshold_r().
double optimal_t_cat(double r);

/// arccoth((3 + 3e^4 + e^2 sqrt(36 + e^4)) / (2e^4 - 3)).
double scat_threshold_r();

/// tau(r) maximizing the odd squeezed-cat (alpha = 1/2, R = 1) fidelity at
/// phi = pi; 0 at the threshold, rising towards ~0.525 as r grows. Throws
/// std::domain_error below scat_threshold_r().
double optimal_t_scat(double r);

/// P(1, r, t~(r), pi) and P(1, r, tau(r), pi) in closed form.
double probability_cat_optimal(double r);
double probability_scat_optimal(double r);

struct ProbabilityOptimum {
  double r = 0.0;
  double probability = 0.0;
};

/// cosh r* = 8 / sqrt(3 sqrt 73 - 9).
ProbabilityOptimum best_probability_cat();
/// cosh^2 r* = (4e^4 - 3)^2 / (3 e^2 Q), Q = e^6 - 13e^2 + sqrt(36 + e^4)(e^4 + 1).
ProbabilityOptimum best_probability_scat();

enum class Objective { fidelity_cat, fidelity_scat, probability, negativity };

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
  bool fixed() const { return hi == lo; }
};

struct SearchSpace {
  Bounds r{0.0, 2.0};
  Bounds t{0.0, 1.0};
  Bounds phi{0.0, pi};
  int n = 1;
  int grid_points = 9;        // per free coordinate
  double step_tol = 1e-6;
  double negativity_tol = 1e-7;
};

/// Objective value at one point. Fidelities use the closed forms for n = 1
/// and numeric overlaps with the same-parity target otherwise.
double evaluate_objective(Objective objective, const SchemeParams& p, double negativity_tol);

struct MaximizeResult {
  SchemeParams params;
  double value = 0.0;
  int evaluations = 0;
};

/// Coarse grid scan over the free coordinates, then compass pattern search
/// from the best grid point, halving the step until every step is below
/// step_tol. Failures of the objective are rethrown as std::runtime_error
/// naming the parameters.
MaximizeResult maximize(Objective objective, const SearchSpace& space);

}  // namespace herald
