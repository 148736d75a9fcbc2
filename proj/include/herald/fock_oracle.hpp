#pragma once

// Brute-force verifier: the whole scheme simulated in a truncated Fock basis,
// plus direct quadrature of the projection integral in position space.
// Nothing here calls the closed forms of scheme.hpp.

#include <span>
#include <vector>

#include "herald/common.hpp"
#include "herald/phase_space.hpp"
#include "herald/scheme.hpp"

namespace herald {

struct FockVector {
  std::vector<complex> amplitudes;  // index = photon number
  double truncation_loss = 0.0;     // 1 - sum |c_k|^2 of the source state

  int cutoff() const { return static_cast<int>(amplitudes.size()) - 1; }
  double norm2() const;
};

/// Two-mode amplitudes c(n1, n2), both indices in [0, dim).
struct TwoModeFockVector {
  int dim = 0;
  std::vector<complex> amplitudes;  // row-major, n1 * dim + n2

  complex operator()(int n1, int n2) const {
    return amplitudes[static_cast<std::size_t>(n1) * dim + n2];
  }
  double norm2() const;
};

/// max(60, ceil(10 e^{2r})) rounded up to even.
int recommended_cutoff(double r);

/// c_{2m} = (-e^{i phi} tanh r)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r) for
/// photon numbers 0..cutoff. Throws std::runtime_error naming the required
/// cutoff if the discarded tail exceeds max_loss.
FockVector squeezed_vacuum_fock(double r, double phi, int cutoff, double max_loss = 1e-8);

/// Beam splitter acting as psi(x1, x2) -> psi(t x1 + rho x2, -rho x1 + t x2),
/// i.e. b1^dag = t a1^dag + rho a2^dag and b2^dag = -rho a1^dag + t a2^dag on
/// the input creation operators. The output holds every total photon number
/// reachable from the inputs, so no further truncation occurs.
TwoModeFockVector beam_splitter_apply(const FockVector& mode1, const FockVector& mode2,
                                      double t);

struct HeraldedFockState {
  FockVector state;  // normalized conditional state of mode 2
  double probability = 0.0;
};

/// Projects mode 1 onto |n>. Throws ImpossibleOutcome below 1e-14.
HeraldedFockState project_pnrd(const TwoModeFockVector& state, int n);

/// Full oracle pipeline for p at the given cutoff (0 = recommended_cutoff).
struct OracleOutcome {
  HeraldedFockState herald;
  double input_truncation_loss = 0.0;
  std::vector<double> outcome_probabilities;  // P(n) for every n in range
};

OracleOutcome simulate_scheme(const SchemeParams& p, int cutoff = 0);

/// psi(x) = sum_k c_k h_k(x) with normalized Hermite functions.
complex fock_wavefunction(const FockVector& v, double x);

/// Unnormalized output wavefunction on x_grid from direct quadrature of
///   integral psi_sv(t x1 + rho x, r, 0) psi_sv(-rho x1 + t x, r, phi) <n|x1> dx1.
std::vector<complex> direct_projection_integral(const SchemeParams& p,
                                                std::span<const double> x_grid);

/// Wigner function of a pure Fock-basis state by a forward Laguerre
/// recursion over density-matrix elements.
double fock_wigner_at(const FockVector& v, double x, double p);
WignerGrid fock_wigner(const FockVector& v, const GridSpec& spec);

/// Negativity of a Fock-basis state, integrated in the frame of its own
/// covariance matrix.
NegativityResult fock_negativity(const FockVector& v, double tol);

/// Oracle-equivalence sweep over (r, phi, t) for n = 0..n_max.
struct OracleSweepSpec {
  int r_steps = 5;
  int phi_steps = 5;
  int t_steps = 5;
  double r_min = 0.3;
  double r_max = 1.2;
  int n_max = 4;
  int min_cutoff = 60;  // the recommended cutoff is used when larger
};

struct OracleSweepReport {
  int points = 0;
  int skipped_impossible = 0;
  double min_fidelity = 1.0;
  double max_probability_error = 0.0;
  double max_completeness_error = 0.0;  // |sum_n P(n) - 1| of the closed form
  double max_oracle_completeness_error = 0.0;  // same for the oracle, net of truncation
};

/// r evenly spaced on [r_min, r_max]; phi = pi (i+1)/phi_steps; t = (j+1)/(t_steps+1).
OracleSweepReport oracle_sweep(const OracleSweepSpec& spec);

}  // namespace herald
