#pragma once

// Target states for the heralded output and their fidelities.
//
// Conventions (same quadratures as the scheme): a coherent state |alpha>
// with real alpha is centred at x0 = sqrt(2) alpha; the squeezed coherent
// state D(alpha) S(R)|0> has wavefunction
//   pi^{-1/4} e^{R/2} exp(-e^{2R} (x - x0)^2 / 2),
// i.e. S(R) narrows the x-quadrature by e^{-R}.

#include "herald/common.hpp"
#include "herald/scheme.hpp"

namespace herald {

enum class TargetKind { cat, squeezed_cat, fock };
enum class Parity { even, odd };

struct TargetState {
  TargetKind kind = TargetKind::cat;
  double alpha = 0.0;  // real amplitude
  double R = 0.0;      // squeezing of the cat, nepers
  Parity parity = Parity::even;
  int n = 0;           // Fock number, kind == fock only

  static TargetState cat(double alpha, Parity parity);
  static TargetState squeezed_cat(double alpha, double R, Parity parity);
  static TargetState fock(int n);

  /// ||(|alpha,R> +- |-alpha,R>)||^2 = 2 (1 +- exp(-2 alpha^2 e^{2R})); R = 0
  /// gives the plain-cat value 2 (1 +- e^{-2|alpha|^2}). Unused for Fock targets.
  double superposition_norm() const;
};

void validate(const TargetState& ts);

complex target_wavefunction(const TargetState& ts, double x);

/// |<target|psi>|^2 by adaptive quadrature of the overlap integral.
double fidelity_numeric(const ClosedFormWavefunction& psi, const TargetState& ts);
double fidelity_numeric(const SchemeParams& p, const TargetState& ts);

/// Closed-form fidelity of the single-photon heralded state with the odd cat
/// of amplitude 2.
double fidelity_cat_closed(double r, double t, double phi);

/// Closed-form fidelity of the single-photon heralded state with the odd
/// squeezed cat alpha = 1/2, R = 1. Throws std::domain_error at phi = 0,
/// where the expression is 0/0.
double fidelity_scat_closed(double r, double t, double phi);

}  // namespace herald
