#pragma once

// Wigner function of the heralded output state, grid evaluation and Wigner
// negativity. Transform convention:
//   W(x, p) = (1/pi) integral psi(x + y) psi*(x - y) exp(-2 i y p) dy.

#include <array>
#include <string>
#include <vector>

#include "herald/quadrature.hpp"
#include "herald/scheme.hpp"

namespace herald {

/// Precomputed closed form of W_n(x, p) for one parameter set.
///
/// For gamma > 0 this is the fully simplified expression: a Gaussian
/// exp(-v^T M v) times sum_k C(n,k)^2 k! (-2 gamma^2/(gamma^2+1))^k
/// |H_{n-k}(X(x,p), y)|^2. For separable configurations (gamma = 0) the
/// output is a squeezed vacuum and the Gaussian Wigner function is used.
class WignerKernel {
 public:
  explicit WignerKernel(const SchemeParams& p);

  double operator()(double x, double p) const;

  /// Same quantity through the unsimplified route: the Gaussian integral of
  /// two generalized Hermite polynomials, evaluated with
  /// gauss_hermite_integral. Complex only through rounding.
  complex integral_form(double x, double p) const;

  /// x^2 coefficient of the wavefunction-product Gaussian (alpha).
  double alpha_w() const { return alpha_w_; }
  /// Linear coefficient beta(x, p) = -2 i (Im(E) x + p).
  complex beta_w(double x, double p) const;
  complex delta() const { return psi_.hermite_linear; }
  complex chi() const { return psi_.hermite_offset; }
  int order() const { return psi_.order; }

  /// Envelope matrix M (row-major) of exp(-v^T M v), v = (x, p).
  const std::array<double, 4>& envelope() const { return envelope_; }

 private:
  SchemeParams params_;
  ClosedFormWavefunction psi_;
  bool gaussian_ = false;
  double alpha_w_ = 0.0;
  double chirp_ = 0.0;  // Im(E)
  std::array<double, 4> envelope_{};
  double prefactor_ = 0.0;
  complex arg_x_;  // Hermite argument X = arg_x_ x + arg_p_ p
  complex arg_p_;
  complex second_;
  std::vector<double> weights_;
};

double wigner_at(const SchemeParams& p, double x, double mom);

struct GridSpec {
  double x_min = -6.0;
  double x_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
  int nx = 201;
  int np = 201;
};

void validate(const GridSpec& spec);

/// Row-major samples W(x_i, p_j), x_i = x_min + i dx (endpoints included).
struct WignerGrid {
  GridSpec spec;
  double dx = 0.0;
  double dp = 0.0;
  std::vector<double> values;  // index i * np + j
  double normalization = 0.0;  // sum(values) dx dp
  std::vector<std::string> warnings;

  double x(int i) const { return spec.x_min + i * dx; }
  double p(int j) const { return spec.p_min + j * dp; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * spec.np + j]; }

  /// Riemann-sum estimate of integral |W| - 1 on this grid. Converges only
  /// as O(dx^2) where W changes sign; wigner_negativity is the accurate route.
  double negativity() const;
};

/// Shared by every Wigner grid producer: fills spacing, values (parallel over
/// rows), normalization and the undersized-grid warning.
WignerGrid sample_wigner(const std::function<double(double, double)>& w, const GridSpec& spec);

WignerGrid wigner_grid(const SchemeParams& p, const GridSpec& spec);

/// Full negativity report; see adaptive_negativity for the refinement rule.
/// Starting whitened half-width is 6 sigma + sqrt(2n + 1), sigma = 1/sqrt(2).
NegativityResult negativity_report(const SchemeParams& p, double tol);

/// integral |W| dx dp - 1.
double wigner_negativity(const SchemeParams& p, double tol);

}  // namespace herald
