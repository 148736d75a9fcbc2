#include "herald/scheme.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "herald/specfun.hpp"

namespace herald {

double SchemeParams::rho() const { return std::sqrt(std::max(0.0, 1.0 - t * t)); }

void validate(const SchemeParams& p) {
  if (!std::isfinite(p.r) || p.r < 0.0) {
    throw std::invalid_argument("squeezing r must be finite and >= 0");
  }
  if (!std::isfinite(p.phi) || p.phi < 0.0 || p.phi > pi) {
    throw std::invalid_argument("relative phase phi must lie in [0, pi]");
  }
  if (!std::isfinite(p.t) || p.t < 0.0 || p.t > 1.0) {
    throw std::invalid_argument("transmission t must lie in [0, 1]");
  }
  if (p.n < 0) throw std::invalid_argument("photon count n must be >= 0");
}

double db_to_nepers(double db) { return db * std::log(10.0) / 20.0; }
double nepers_to_db(double r) { return 20.0 * r / std::log(10.0); }

namespace {

// 1 - e^{i phi}
complex one_minus_phase(double phi) { return {1.0 - std::cos(phi), -std::sin(phi)}; }

double gamma_of(const SchemeParams& p) {
  return 2.0 * p.t * p.rho() * std::sin(0.5 * p.phi) * std::sinh(p.r);
}

// Output envelope E with psi_out ~ exp(-E x^2 / 2).
complex output_exponent(const SchemeParams& p) {
  const complex u = one_minus_phase(p.phi) * (p.t * p.t * std::sinh(p.r));
  return (std::exp(p.r) - u) / (std::exp(-p.r) + u);
}

// sum_k A_k gamma^{2n-4k} (sinh^2 r - gamma^2)^k / ((gamma^2+1)^n cosh^{2k} r),
// A_k = ((1-n)/2)_k (-n/2)_k / (k!)^2: N divided by sqrt(pi) n! 2^n and the
// square-root factor. Every term is non-negative, so the sum is taken in log
// space with a max shift.
double hermite_norm_series(int n, double gamma, double r) {
  const double g2 = gamma * gamma;
  const double sh2 = std::sinh(r) * std::sinh(r);
  const double ch2 = std::cosh(r) * std::cosh(r);
  const double diff = std::max(0.0, sh2 - g2);
  const double log_g = gamma > 0.0 ? std::log(gamma) : -std::numeric_limits<double>::infinity();
  const double log_diff = diff > 0.0 ? std::log(diff) : -std::numeric_limits<double>::infinity();
  const double a = 0.5 * (1.0 - n);
  const double b = -0.5 * n;

  const auto power_log = [](int exponent, double log_base) {
    return exponent == 0 ? 0.0 : exponent * log_base;
  };

  std::vector<double> logs;
  double log_coeff = 0.0;
  for (int k = 0; k <= n / 2; ++k) {
    logs.push_back(log_coeff + power_log(2 * n - 4 * k, log_g) + power_log(k, log_diff) -
                   n * std::log1p(g2) - k * std::log(ch2));
    const double ratio = (a + k) * (b + k) / (static_cast<double>(k + 1) * (k + 1));
    if (ratio <= 0.0) break;
    log_coeff += std::log(ratio);
  }
  double top = -std::numeric_limits<double>::infinity();
  for (double v : logs) top = std::max(top, v);
  if (!std::isfinite(top)) return 0.0;
  double sum = 0.0;
  for (double v : logs) sum += std::exp(v - top);
  return std::exp(top) * sum;
}

// (2^n n!) computed as a double; fine for the n <= 60 range of interest.
double two_pow_factorial(int n) {
  double value = 1.0;
  for (int k = 1; k <= n; ++k) value *= 2.0 * k;
  return value;
}

}  // namespace

DerivedCoefficients derived_coefficients(const SchemeParams& p) {
  validate(p);
  const double r = p.r;
  const double t2 = p.t * p.t;
  const double s = std::sin(0.5 * p.phi);
  const double c = std::cos(0.5 * p.phi);
  const double denom = std::cosh(2 * r) - std::cos(p.phi) * std::sinh(2 * r);
  const complex chirp = complex(1.0, std::sin(p.phi) * std::sinh(2 * r)) / denom;

  DerivedCoefficients d;
  d.a = 0.5 * (1.0 + std::exp(2 * r) * t2 - (t2 - 1.0) * chirp);
  d.b = (std::exp(4 * r) - 1.0) * p.t * p.rho() * s / complex(std::exp(2 * r) * s, c);
  d.c = 0.5 * (t2 * chirp - std::exp(2 * r) * (t2 - 1.0));
  d.xi = complex((1.0 + (std::exp(2 * r) - 1.0) * t2) * s, c);
  d.gamma = gamma_of(p);
  d.eta = t2 * std::sin(p.phi) * std::sinh(2 * r);
  return d;
}

bool is_separable_configuration(const SchemeParams& p) { return gamma_of(p) == 0.0; }

complex ClosedFormWavefunction::operator()(double x) const {
  return norm_factor * std::exp(envelope_coeff * (x * x)) *
         gen_hermite(order, hermite_linear * x, hermite_offset);
}

complex squeezed_vacuum_exponent(double r, double phi) {
  const double denom = std::cosh(2 * r) - std::cos(phi) * std::sinh(2 * r);
  return complex(1.0, std::sin(phi) * std::sinh(2 * r)) / denom;
}

complex squeezed_vacuum_wavefunction(double r, double phi, double x) {
  const double denom = std::cosh(2 * r) - std::cos(phi) * std::sinh(2 * r);
  return std::pow(pi, -0.25) * std::pow(denom, -0.25) *
         std::exp(-0.5 * x * x * squeezed_vacuum_exponent(r, phi));
}

double normalization(const SchemeParams& p) {
  validate(p);
  const double s = std::sin(0.5 * p.phi);
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  const double c = std::cos(0.5 * p.phi);
  const double gamma = gamma_of(p);
  const double cot = c / s;
  return std::sqrt(pi) * two_pow_factorial(p.n) * hermite_norm_series(p.n, gamma, p.r) *
         std::sqrt((cot * cot + std::exp(4 * p.r)) / (gamma * gamma + 1.0));
}

double herald_probability(const SchemeParams& p) {
  validate(p);
  const double r = p.r;
  const double s = std::sin(0.5 * p.phi);
  const double c = std::cos(0.5 * p.phi);
  const double gamma = gamma_of(p);
  const double denom = std::cosh(2 * r) - std::cos(p.phi) * std::sinh(2 * r);
  // sin(phi/2) N / (2^n n! e^r cosh r sqrt(pi denom)), with sin(phi/2) folded
  // into the square root so phi = 0 stays finite.
  const double folded_root =
      std::sqrt((c * c + std::exp(4 * r) * s * s) / (gamma * gamma + 1.0));
  return hermite_norm_series(p.n, gamma, r) * folded_root /
         (std::exp(r) * std::cosh(r) * std::sqrt(denom));
}

ClosedFormWavefunction output_wavefunction(const SchemeParams& p) {
  validate(p);
  const double gamma = gamma_of(p);
  ClosedFormWavefunction psi;

  if (gamma == 0.0) {
    // Separable arms: the output is the squeezed vacuum that reaches mode 2
    // untouched; only even counts are possible.
    if (herald_probability(p) == 0.0) {
      throw ImpossibleOutcome("impossible outcome: n = " + std::to_string(p.n) +
                              " has zero probability in a separable configuration");
    }
    const double out_phase = (p.t == 1.0) ? p.phi : 0.0;
    const complex e = squeezed_vacuum_exponent(p.r, out_phase);
    psi.norm_factor = std::pow(e.real() / pi, 0.25);
    psi.envelope_coeff = -0.5 * e;
    psi.hermite_linear = 0.0;
    psi.hermite_offset = 0.0;
    psi.order = 0;
    return psi;
  }

  const DerivedCoefficients d = derived_coefficients(p);
  const double r = p.r;
  const double s = std::sin(0.5 * p.phi);
  const double c = std::cos(0.5 * p.phi);
  const double series = hermite_norm_series(p.n, gamma, r);
  // |norm|^2 = e^r sqrt(gamma^2+1) / (|xi| sqrt(pi) 2^n n! series); the phase
  // is that of sqrt(e^r (e^{2r} + i cot(phi/2)) / xi).
  const complex phase_arg = std::exp(r) * complex(std::exp(2 * r) * s, c) / d.xi;
  const complex root = std::sqrt(phase_arg);
  const double magnitude =
      std::sqrt(std::exp(r) * std::sqrt(gamma * gamma + 1.0) /
                (std::abs(d.xi) * std::sqrt(pi) * two_pow_factorial(p.n) * series));
  psi.norm_factor = root / std::abs(root) * magnitude;
  psi.envelope_coeff = -0.5 * output_exponent(p);
  psi.hermite_linear = -2.0 * std::exp(r) * gamma / d.xi;
  psi.hermite_offset = std::tanh(r) * (2.0 * p.rho() * p.rho() * s / d.xi - 1.0);
  psi.order = p.n;
  return psi;
}

}  // namespace herald
