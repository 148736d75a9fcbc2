#include "herald/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace herald {

namespace {

void require_order(int n, const char* name) {
  if (n < 0) {
    throw std::invalid_argument(std::string(name) + ": polynomial order must be >= 0");
  }
}

}  // namespace

complex gen_hermite(int n, complex x, complex y) {
  require_order(n, "gen_hermite");
  const int top = n / 2;
  const complex x2 = x * x;
  // Horner in x^2 over the series; coeff_k = n! / ((n-2k)! k!).
  double coeff = 1.0;
  complex y_pow = 1.0;
  complex acc = 0.0;
  for (int k = 0; k <= top; ++k) {
    acc = acc * x2 + coeff * y_pow;
    coeff *= static_cast<double>(n - 2 * k) * static_cast<double>(n - 2 * k - 1) /
             static_cast<double>(k + 1);
    y_pow *= y;
  }
  return (n % 2 == 1) ? acc * x : acc;
}

complex two_index_hermite(int m, int n, complex x, complex y, complex w, complex z,
                          complex t) {
  require_order(m, "two_index_hermite");
  require_order(n, "two_index_hermite");
  const int top = std::min(m, n);
  double coeff = 1.0;  // n! m! / ((m-k)! (n-k)! k!)
  complex t_pow = 1.0;
  complex sum = 0.0;
  for (int k = 0; k <= top; ++k) {
    sum += coeff * t_pow * gen_hermite(m - k, x, y) * gen_hermite(n - k, w, z);
    coeff *= static_cast<double>(m - k) * static_cast<double>(n - k) /
             static_cast<double>(k + 1);
    t_pow *= t;
  }
  return sum;
}

complex gauss_hermite_integral(int m, const HermiteFactor& first, int n,
                               const HermiteFactor& second, complex alpha, complex beta) {
  if (!(alpha.real() > 0.0)) {
    throw std::domain_error("gauss_hermite_integral: Re(alpha) must be positive");
  }
  const complex two_alpha = 2.0 * alpha;
  const complex four_alpha = 4.0 * alpha;
  const complex x = first.offset + first.scale * beta / two_alpha;
  const complex y = first.second + first.scale * first.scale / four_alpha;
  const complex w = second.offset + second.scale * beta / two_alpha;
  const complex z = second.second + second.scale * second.scale / four_alpha;
  const complex t = first.scale * second.scale / two_alpha;
  return std::sqrt(pi / alpha) * std::exp(beta * beta / four_alpha) *
         two_index_hermite(m, n, x, y, w, z, t);
}

complex hyp2f1_terminating(int n, complex z) {
  require_order(n, "hyp2f1_terminating");
  const double a = 0.5 * (1.0 - n);
  const double b = -0.5 * n;
  complex term = 1.0;
  complex sum = 1.0;
  for (int k = 0;; ++k) {
    const double factor = (a + k) * (b + k);
    if (factor == 0.0) break;
    term *= factor / (static_cast<double>(k + 1) * static_cast<double>(k + 1)) * z;
    sum += term;
  }
  return sum;
}

}  // namespace herald
