#pragma once

// Special functions behind the heralded-state closed forms.
//
// The generalized Hermite polynomial
//   H_n(x, y) = n! sum_{k=0}^{floor(n/2)} x^{n-2k} y^k / ((n-2k)! k!)
// reduces to the physicists' polynomial through H_n(x) = H_n(2x, -1).
// All sums are accumulated from coefficient ratios; no factorial is ever
// formed explicitly, which keeps orders up to 60 well inside double range.

#include "herald/common.hpp"

namespace herald {

complex gen_hermite(int n, complex x, complex y);

/// Two-index Hermite polynomial H_{m,n}(x, y, w, z | t).
complex two_index_hermite(int m, int n, complex x, complex y, complex w, complex z,
                          complex t);

/// One factor H_k(scale * x + offset, second) inside a Gaussian integral.
struct HermiteFactor {
  complex scale;
  complex offset;
  complex second;
};

/// Closed form of
///   integral dx H_m(d1 x + e1, f1) H_n(d2 x + e2, f2) exp(-alpha x^2 + beta x)
/// over the real line. Requires Re(alpha) > 0; throws std::domain_error
/// otherwise. Uses the principal branch of the complex square root.
complex gauss_hermite_integral(int m, const HermiteFactor& first, int n,
                               const HermiteFactor& second, complex alpha, complex beta);

/// 2F1((1-n)/2, -n/2; 1; z). One upper parameter is a non-positive integer
/// for every n >= 0, so this is a polynomial of degree floor(n/2) in z.
complex hyp2f1_terminating(int n, complex z);

}  // namespace herald
