#pragma once

// Two squeezed vacua (equal squeezing r, relative phase phi) mixed on a
// beam splitter with amplitude transmission t; mode 1 is measured by a
// photon-number-resolving detector that reports n, mode 2 is the output.
//
// Conventions: position wavefunctions with vacuum psi ~ exp(-x^2/2), i.e.
// unit-free quadratures with vacuum variance 1/2. Squeezing in decibels is
// 20 r / ln 10.

#include "herald/common.hpp"

namespace herald {

struct SchemeParams {
  double r = 0.0;    // squeezing, nepers, >= 0
  double phi = 0.0;  // relative phase, [0, pi]
  double t = 1.0;    // amplitude transmission, [0, 1]
  int n = 0;         // detected photon count, >= 0

  /// Reflection coefficient sqrt(1 - t^2).
  double rho() const;
};

/// Throws std::invalid_argument naming the first violated bound.
void validate(const SchemeParams& p);

double db_to_nepers(double db);
double nepers_to_db(double r);

/// Gaussian-integral parameters of the projection integral
///   psi_out(x) ~ exp(-c x^2) integral exp(-a x1^2 + b x1 x) H_n(x1) dx1
/// plus the shorthands xi, gamma and eta of the closed forms.
struct DerivedCoefficients {
  complex a;
  complex b;
  complex c;
  complex xi;
  double gamma = 0.0;
  double eta = 0.0;
};

DerivedCoefficients derived_coefficients(const SchemeParams& p);

/// True when gamma vanishes (t in {0, 1}, phi = 0 or r = 0): the two output
/// arms are then separable.
bool is_separable_configuration(const SchemeParams& p);

/// psi(x) = norm_factor * exp(envelope_coeff x^2) * H_order(hermite_linear x, hermite_offset)
struct ClosedFormWavefunction {
  complex norm_factor;
  complex envelope_coeff;  // Re < 0
  complex hermite_linear;
  complex hermite_offset;
  int order = 0;

  complex operator()(double x) const;
};

/// Input squeezed vacuum of Eq. form
///   pi^{-1/4} D^{-1/4} exp(-(x^2/2)(1 + i sin(phi) sinh 2r) / D),
///   D = cosh 2r - cos(phi) sinh 2r.
complex squeezed_vacuum_wavefunction(double r, double phi, double x);

/// Coefficient E with psi ~ exp(-E x^2 / 2) for the squeezed vacuum above.
complex squeezed_vacuum_exponent(double r, double phi);

/// Normalized heralded output state. Global phase is arbitrary.
/// Throws ImpossibleOutcome when the outcome has zero probability (odd n in
/// a separable configuration, or n > 0 without squeezing).
ClosedFormWavefunction output_wavefunction(const SchemeParams& p);

/// N(n, r, t, phi) = integral of the unnormalized output |psi|^2.
/// Evaluated with the (2 gamma^2 / (gamma^2 + 1))^n prefactor folded into the
/// hypergeometric polynomial so gamma -> 0 is finite. Infinite at phi = 0
/// where the unnormalized wavefunction itself diverges.
double normalization(const SchemeParams& p);

/// Probability that the detector reports p.n.
double herald_probability(const SchemeParams& p);

}  // namespace herald
