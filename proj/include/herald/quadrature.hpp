#pragma once

// Numerical integration and parallel-loop helpers shared by the
// phase-space, target and oracle modules.

#include <array>
#include <cstddef>
#include <functional>

#include "herald/common.hpp"

namespace herald {

/// Worker count taken from HERALD_THREADS, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count) across thread_count() workers.
/// Iterations must write to disjoint storage. The first exception thrown by
/// body stops the remaining work and is rethrown to the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Integral of f over the real line by the composite trapezoid rule on
/// [-half_width, half_width], halving the step until two successive
/// estimates agree to `tol` (absolute, scaled by max(1, |I|)), then widening
/// the window by 1.5x until the value stops moving. For the rapidly decaying
/// Gaussian-times-polynomial integrands used here the trapezoid rule on a
/// wide window converges geometrically.
/// Throws ConvergenceError after the refinement budget is spent.
complex integrate_line(const std::function<complex(double)>& f, double half_width,
                       double tol = 1e-13);

/// Affine frame v = L u mapping whitened coordinates u to phase space
/// v = (x, p). In a well-chosen frame the Wigner envelope is exp(-|u|^2).
struct PhaseSpaceFrame {
  std::array<double, 4> L{1.0, 0.0, 0.0, 1.0};  // row-major 2x2

  /// Frame for an envelope exp(-v^T M v); M symmetric positive definite,
  /// row-major.
  static PhaseSpaceFrame from_envelope(const std::array<double, 4>& M);

  /// Frame for a distribution with covariance S (row-major), chosen so a
  /// Gaussian with that covariance becomes exp(-|u|^2).
  static PhaseSpaceFrame from_covariance(const std::array<double, 4>& S);

  double jacobian() const { return std::abs(L[0] * L[3] - L[1] * L[2]); }
  std::array<double, 2> map(double u1, double u2) const {
    return {L[0] * u1 + L[1] * u2, L[2] * u1 + L[3] * u2};
  }
};

struct PhaseSpaceMoments {
  double abs_integral = 0.0;     // integral |W|
  double integral = 0.0;         // integral W
  double square_integral = 0.0;  // integral W^2
};

/// Integrals of |W|, W and W^2 over the square [-half_width, half_width]^2 in
/// the frame's whitened coordinates. Along u2 each row is sampled on `cells`
/// intervals, split at the sign changes of W (bracketing root search) and
/// integrated by 5-point Gauss-Legendre on the smooth pieces. Along u1 the
/// row integrals are combined by adaptive Gauss-Kronrod to absolute
/// tolerance tol on the |W| integral.
PhaseSpaceMoments integrate_phase_space(const std::function<double(double, double)>& w,
                                        const PhaseSpaceFrame& frame, double half_width,
                                        int cells, double tol = 1e-9);

struct NegativityResult {
  double negativity = 0.0;     // integral |W| - 1
  double normalization = 0.0;  // integral W
  double purity = 0.0;         // integral W^2
  double half_width = 0.0;     // final whitened domain half-width
  int cells = 0;               // final resolution
  int refinements = 0;
};

/// Repeats integrate_phase_space (at tolerance tol / 10), enlarging the
/// domain by 1.25x and doubling the row resolution per round, until
/// successive negativity estimates differ by less than tol. Throws ConvergenceError after max_rounds.
NegativityResult adaptive_negativity(const std::function<double(double, double)>& w,
                                     const PhaseSpaceFrame& frame, double start_half_width,
                                     double tol, int start_cells = 96, int max_rounds = 6);

}  // namespace herald
