#include "herald/targets.hpp"

#include <algorithm>
#include <cmath>

#include "herald/quadrature.hpp"
#include "herald/specfun.hpp"

namespace herald {

TargetState TargetState::cat(double alpha, Parity parity) {
  return {TargetKind::cat, alpha, 0.0, parity, 0};
}

TargetState TargetState::squeezed_cat(double alpha, double R, Parity parity) {
  return {TargetKind::squeezed_cat, alpha, R, parity, 0};
}

TargetState TargetState::fock(int n) { return {TargetKind::fock, 0.0, 0.0, Parity::even, n}; }

double TargetState::superposition_norm() const {
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  const double width = kind == TargetKind::squeezed_cat ? std::exp(2 * R) : 1.0;
  return 2.0 * (1.0 + sign * std::exp(-2.0 * alpha * alpha * width));
}

void validate(const TargetState& ts) {
  if (!std::isfinite(ts.alpha) || !std::isfinite(ts.R)) {
    throw std::invalid_argument("target amplitude and squeezing must be finite");
  }
  if (ts.kind == TargetKind::fock) {
    if (ts.n < 0) throw std::invalid_argument("Fock target needs n >= 0");
    return;
  }
  if (ts.kind == TargetKind::cat && ts.R != 0.0) {
    throw std::invalid_argument("plain cat target must have R = 0");
  }
  if (ts.parity == Parity::odd && ts.alpha == 0.0) {
    throw std::invalid_argument("odd cat needs alpha != 0 (normalization vanishes)");
  }
}

namespace {

// Normalized Hermite function h_n(x) by the stable three-term recurrence.
double hermite_function(int n, double x) {
  double prev = 0.0;
  double curr = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * curr - std::sqrt(k / (k + 1.0)) * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

double spread(const TargetState& ts) {
  switch (ts.kind) {
    case TargetKind::fock:
      return std::sqrt(2.0 * ts.n + 1.0);
    case TargetKind::squeezed_cat:
      return std::sqrt(2.0) * std::abs(ts.alpha) + std::exp(-ts.R) + std::exp(ts.R);
    case TargetKind::cat:
      break;
  }
  return std::sqrt(2.0) * std::abs(ts.alpha) + 1.0;
}

}  // namespace

complex target_wavefunction(const TargetState& ts, double x) {
  validate(ts);
  if (ts.kind == TargetKind::fock) return hermite_function(ts.n, x);
  const double x0 = std::sqrt(2.0) * ts.alpha;
  const double width = ts.kind == TargetKind::squeezed_cat ? std::exp(2 * ts.R) : 1.0;
  const double amp = std::pow(pi, -0.25) * std::pow(width, 0.25);
  const double sign = ts.parity == Parity::even ? 1.0 : -1.0;
  const double lobes = std::exp(-0.5 * width * (x - x0) * (x - x0)) +
                       sign * std::exp(-0.5 * width * (x + x0) * (x + x0));
  return amp * lobes / std::sqrt(ts.superposition_norm());
}

double fidelity_numeric(const ClosedFormWavefunction& psi, const TargetState& ts) {
  validate(ts);
  const double envelope_sigma = 1.0 / std::sqrt(-2.0 * psi.envelope_coeff.real());
  const double half_width =
      std::max(8.0 * envelope_sigma * std::sqrt(2.0 * psi.order + 1.0), 8.0 * spread(ts));
  const complex overlap = integrate_line(
      [&](double x) { return std::conj(target_wavefunction(ts, x)) * psi(x); }, half_width,
      1e-13);
  return std::norm(overlap);
}

double fidelity_numeric(const SchemeParams& p, const TargetState& ts) {
  return fidelity_numeric(output_wavefunction(p), ts);
}

double fidelity_cat_closed(double r, double t, double phi) {
  validate(SchemeParams{r, phi, t, 1});
  const double s = std::sin(0.5 * phi);
  const double gamma = 2.0 * t * std::sqrt(1.0 - t * t) * s * std::sinh(r);
  const double cosh_r = std::cosh(r);
  return 4.0 * std::pow(gamma * gamma + 1.0, 1.5) *
         std::exp(-4.0 * std::tanh(r) * (1.0 - 2.0 * t * t * s * s)) /
         (std::sinh(4.0) * cosh_r * cosh_r * cosh_r);
}

double fidelity_scat_closed(double r, double t, double phi) {
  validate(SchemeParams{r, phi, t, 1});
  const double s = std::sin(0.5 * phi);
  if (s == 0.0) {
    throw std::domain_error("fidelity_scat_closed: singular at phi = 0; perturb phi");
  }
  const double c = std::cos(0.5 * phi);
  const double e2 = std::exp(2.0);
  const double er = std::exp(r);
  const double sh = std::sinh(r);
  const double t2 = t * t;
  const complex u = complex(1.0 - std::cos(phi), -std::sin(phi)) * (t2 * sh);  // (1-e^{i phi}) t^2 sinh r
  const double spread_term = (std::exp(2 * r) - 1.0) * t2 + 1.0;
  const double g = er * std::abs((1.0 + er * u) / (er * (e2 - 1.0) * u + std::exp(2 * r) + e2)) *
                   std::sqrt((1.0 + 4.0 * t2 * (1.0 - t2) * sh * sh * s * s) /
                             (c * c / (s * s) + spread_term * spread_term));
  const complex inner = 1.0 - 2.0 * er * std::cosh(r) / (1.0 + er * u) - e2;
  const double coth_term = 1.0 / std::tanh(e2 / 4.0) - 1.0;
  // g already carries one factor sin(phi/2); the overlap needs g^3 / sin^3(phi/2).
  return 2.0 * g * g * g * std::exp(5.0) * coth_term / (s * s * s) *
         std::exp(-0.5 * e2 * e2 * (1.0 / inner).real());
}

}  // namespace herald
