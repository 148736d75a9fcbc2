#include "herald/phase_space.hpp"

#include <cmath>

#include "herald/specfun.hpp"

namespace herald {

WignerKernel::WignerKernel(const SchemeParams& p) : params_(p), psi_(output_wavefunction(p)) {
  const complex e = -2.0 * psi_.envelope_coeff;  // psi ~ exp(-E x^2 / 2)
  alpha_w_ = e.real();
  chirp_ = e.imag();

  if (is_separable_configuration(p)) {
    // W = (1/pi) exp(-a x^2 - (p + b x)^2 / a), E = a + i b.
    gaussian_ = true;
    const double a = alpha_w_;
    const double b = chirp_;
    envelope_ = {a + b * b / a, b / a, b / a, 1.0 / a};
    prefactor_ = 1.0 / pi;
    return;
  }

  const DerivedCoefficients d = derived_coefficients(p);
  const double r = p.r;
  const double g2 = d.gamma * d.gamma;
  const double s = std::sin(0.5 * p.phi);
  const double xi2 = std::norm(d.xi);
  const double e2r = std::exp(2 * r);

  const double mxx = ((g2 + 1) * (g2 + 1) + d.eta * d.eta) * e2r / xi2 / (g2 + 1);
  const double mpp = xi2 / e2r / (g2 + 1);
  const double mxp = d.eta / (g2 + 1);
  envelope_ = {mxx, mxp, mxp, mpp};

  // Normalization prefactor sqrt((cot^2 + e^{4r}) / (pi (gamma^2 + 1))) / N,
  // with the 1/sin(phi/2) of the root cancelled against N.
  const double c = std::cos(0.5 * p.phi);
  const double n_over_root =
      normalization(p) / std::sqrt((c * c / (s * s) + std::exp(4 * r)) / (g2 + 1));
  prefactor_ = 1.0 / (std::sqrt(pi) * n_over_root);

  // Hermite argument, complex conjugate of the commonly printed form:
  // X = -(2 gamma / (gamma^2+1)) conj((xi - 2 t^2 sin(phi/2) sinh 2r) e^r x + i xi e^{-r} p)
  const double lead = -2.0 * d.gamma / (g2 + 1);
  const complex xi_c = std::conj(d.xi);
  arg_x_ = lead * (xi_c - 2.0 * p.t * p.t * s * std::sinh(2 * r)) * std::exp(r);
  arg_p_ = lead * complex(0.0, -1.0) * xi_c * std::exp(-r);
  const complex phase(std::cos(p.phi), std::sin(p.phi));
  second_ = -(p.t * p.t + phase * (1.0 - p.t * p.t)) * std::tanh(r) / (g2 + 1);

  // C(n,k)^2 k! (-2 gamma^2 / (gamma^2 + 1))^k by ratios.
  const int n = p.n;
  const double q = -2.0 * g2 / (g2 + 1);
  weights_.resize(static_cast<std::size_t>(n + 1));
  double w = 1.0;
  for (int k = 0; k <= n; ++k) {
    weights_[k] = w;
    // C(n,k+1)^2 (k+1)! / (C(n,k)^2 k!) = (n-k)^2 / (k+1)
    w *= q * static_cast<double>(n - k) * static_cast<double>(n - k) / (k + 1);
  }
}

double WignerKernel::operator()(double x, double p) const {
  const double quad = envelope_[0] * x * x + 2.0 * envelope_[1] * x * p + envelope_[3] * p * p;
  const double gauss = prefactor_ * std::exp(-quad);
  if (gaussian_) return gauss;
  const complex arg = arg_x_ * x + arg_p_ * p;
  const int n = params_.n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) sum += weights_[k] * std::norm(gen_hermite(n - k, arg, second_));
  return gauss * sum;
}

complex WignerKernel::beta_w(double x, double p) const {
  return complex(0.0, -2.0) * (chirp_ * x + p);
}

complex WignerKernel::integral_form(double x, double p) const {
  // (1/pi) |K|^2 e^{-alpha x^2} integral H(delta y + delta x, chi)
  //   H(-delta* y + delta* x, chi*) exp(-alpha y^2 + beta y) dy
  const complex delta = psi_.hermite_linear;
  const complex chi = psi_.hermite_offset;
  const HermiteFactor first{delta, delta * x, chi};
  const HermiteFactor second{-std::conj(delta), std::conj(delta) * x, std::conj(chi)};
  const complex integral = gauss_hermite_integral(psi_.order, first, psi_.order, second,
                                                  alpha_w_, beta_w(x, p));
  return std::norm(psi_.norm_factor) * std::exp(-alpha_w_ * x * x) * integral / pi;
}

double wigner_at(const SchemeParams& p, double x, double mom) {
  return WignerKernel(p)(x, mom);
}

void validate(const GridSpec& spec) {
  if (spec.nx < 2 || spec.np < 2) throw std::invalid_argument("grid needs nx, np >= 2");
  if (!std::isfinite(spec.x_min) || !std::isfinite(spec.x_max) || !std::isfinite(spec.p_min) ||
      !std::isfinite(spec.p_max)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  if (!(spec.x_max > spec.x_min) || !(spec.p_max > spec.p_min)) {
    throw std::invalid_argument("grid bounds must satisfy min < max");
  }
}

double WignerGrid::negativity() const {
  double total = 0.0;
  for (double v : values) total += std::abs(v);
  return total * dx * dp - 1.0;
}

WignerGrid sample_wigner(const std::function<double(double, double)>& w, const GridSpec& spec) {
  validate(spec);
  WignerGrid grid;
  grid.spec = spec;
  grid.dx = (spec.x_max - spec.x_min) / (spec.nx - 1);
  grid.dp = (spec.p_max - spec.p_min) / (spec.np - 1);
  grid.values.assign(static_cast<std::size_t>(spec.nx) * spec.np, 0.0);
  parallel_for(static_cast<std::size_t>(spec.nx), [&](std::size_t i) {
    const double x = grid.x(static_cast<int>(i));
    for (int j = 0; j < spec.np; ++j) grid.values[i * spec.np + j] = w(x, grid.p(j));
  });
  double total = 0.0;
  for (double v : grid.values) total += v;
  grid.normalization = total * grid.dx * grid.dp;
  if (std::abs(grid.normalization - 1.0) > 1e-4) {
    grid.warnings.push_back("grid normalization " + std::to_string(grid.normalization) +
                            " deviates from 1 by more than 1e-4; enlarge the bounds or "
                            "refine the resolution");
  }
  return grid;
}

WignerGrid wigner_grid(const SchemeParams& p, const GridSpec& spec) {
  const WignerKernel kernel(p);
  return sample_wigner([&kernel](double x, double mom) { return kernel(x, mom); }, spec);
}

NegativityResult negativity_report(const SchemeParams& p, double tol) {
  const WignerKernel kernel(p);
  const PhaseSpaceFrame frame = PhaseSpaceFrame::from_envelope(kernel.envelope());
  const double start = 6.0 / std::sqrt(2.0) + std::sqrt(2.0 * kernel.order() + 1.0);
  return adaptive_negativity([&kernel](double x, double mom) { return kernel(x, mom); }, frame,
                             start, tol);
}

double wigner_negativity(const SchemeParams& p, double tol) {
  return negativity_report(p, tol).negativity;
}

}  // namespace herald
