#include <cmath>
#include <vector>

#include "doctest.h"
#include "herald/phase_space.hpp"
#include "oracles.hpp"

using herald::complex;
using herald::pi;
using herald::SchemeParams;

namespace {

const double kR8dB = 8.0 * std::log(10.0) / 20.0;
const double kBalanced = 1.0 / std::sqrt(2.0);

// (1/pi) integral psi(x + y) psi*(x - y) exp(-2 i y p) dy.
double direct_transform(const herald::ClosedFormWavefunction& psi, double x, double p) {
  const complex v = oracle::real_line([&](double y) {
    return psi(x + y) * std::conj(psi(x - y)) * std::polar(1.0, -2.0 * y * p);
  });
  return v.real() / pi;
}

SchemeParams random_params(int n_max) {
  return {oracle::uniform(0.1, 1.3), oracle::uniform(0.1, pi), oracle::uniform(0.1, 0.9),
          static_cast<int>(oracle::uniform(0.0, n_max + 1.0))};
}

}  // namespace

TEST_CASE("point values") {
  SUBCASE("n = 0 is a positive Gaussian") {
    const SchemeParams p{0.9, 2.1, 0.4, 0};
    for (double x = -5.0; x <= 5.0; x += 0.5) {
      for (double q = -5.0; q <= 5.0; q += 0.5) CHECK(herald::wigner_at(p, x, q) > 0.0);
    }
  }
  SUBCASE("sign at the origin follows parity") {
    CHECK(herald::wigner_at({kR8dB, pi, kBalanced, 1}, 0.0, 0.0) < 0.0);
    for (int draw = 0; draw < 30; ++draw) {
      const SchemeParams p = random_params(6);
      const double w0 = herald::wigner_at(p, 0.0, 0.0);
      CHECK((p.n % 2 == 0 ? w0 > 0.0 : w0 < 0.0));
    }
  }
  SUBCASE("Fock point origin value is (-1)^n / pi") {
    for (int n = 0; n <= 4; ++n) {
      const double expected = (n % 2 == 0 ? 1.0 : -1.0) / pi;
      CHECK(herald::wigner_at({kR8dB, pi, kBalanced, n}, 0.0, 0.0) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed form against the direct transform") {
  for (int draw = 0; draw < 10; ++draw) {
    const SchemeParams p = random_params(5);
    const auto psi = herald::output_wavefunction(p);
    const herald::WignerKernel kernel(p);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const double x = -3.0 + 0.3 * i;
        const double q = -3.0 + 0.3 * j;
        worst = std::max(worst, std::abs(kernel(x, q) - direct_transform(psi, x, q)));
      }
    }
    CAPTURE(p.r);
    CAPTURE(p.phi);
    CAPTURE(p.t);
    CAPTURE(p.n);
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("simplified and integral routes agree") {
  for (int draw = 0; draw < 20; ++draw) {
    const SchemeParams p = random_params(6);
    const herald::WignerKernel kernel(p);
    CHECK(kernel.alpha_w() > 0.0);
    for (double x : {-1.3, 0.0, 0.8}) {
      for (double q : {-0.6, 0.4, 2.0}) {
        const complex w = kernel.integral_form(x, q);
        CHECK(std::abs(w.imag()) < 1e-10);
        CHECK(std::abs(w.real() - kernel(x, q)) < 1e-10);
      }
    }
  }
}

TEST_CASE("separable configurations use the Gaussian fallback") {
  const SchemeParams p{0.7, 1.2, 1.0, 2};
  const auto psi = herald::output_wavefunction(p);
  for (double x : {-1.0, 0.3}) {
    for (double q : {-0.5, 0.9}) {
      CHECK(herald::wigner_at(p, x, q) == doctest::Approx(direct_transform(psi, x, q)).epsilon(1e-9));
    }
  }
  CHECK(herald::wigner_negativity(p, 1e-7) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK_THROWS_AS(herald::WignerKernel({0.7, 1.2, 1.0, 1}), herald::ImpossibleOutcome);
}

TEST_CASE("grid sampling") {
  SUBCASE("vacuum normalization") {
    const auto grid = herald::wigner_grid({0.0, 1.0, 0.5, 0}, herald::GridSpec{});
    CHECK(grid.values.size() == 201u * 201u);
    CHECK(grid.dx == doctest::Approx(0.06));
    CHECK(std::abs(grid.normalization - 1.0) < 1e-6);
    CHECK(grid.warnings.empty());
    CHECK(grid.at(100, 100) == doctest::Approx(1.0 / pi));
  }
  SUBCASE("undersized grid is flagged") {
    herald::GridSpec small;
    small.x_min = -1.0;
    small.x_max = 1.0;
    const auto grid = herald::wigner_grid({kR8dB, pi, kBalanced, 2}, small);
    REQUIRE(grid.warnings.size() == 1);
    CHECK(grid.warnings[0].find("normalization") != std::string::npos);
  }
  SUBCASE("invalid specs") {
    herald::GridSpec bad;
    bad.nx = 1;
    CHECK_THROWS_AS(herald::validate(bad), std::invalid_argument);
    bad = {};
    bad.p_max = bad.p_min;
    CHECK_THROWS_AS(herald::validate(bad), std::invalid_argument);
    bad = {};
    bad.x_min = -INFINITY;
    CHECK_THROWS_AS(herald::wigner_grid({0.5, 1.0, 0.5, 0}, bad), std::invalid_argument);
  }
  SUBCASE("resolution doubling") {
    herald::GridSpec fine;
    fine.nx = fine.np = 401;
    herald::GridSpec finer;
    finer.nx = finer.np = 801;
    // Reference point with a weakly negative (mountain-foot) n = 2 state.
    const SchemeParams reference{0.5, 0.5 * pi, 0.3, 2};
    const double a = herald::wigner_grid(reference, herald::GridSpec{}).negativity();
    const double b = herald::wigner_grid(reference, fine).negativity();
    CHECK(std::abs(a - b) < 1e-5);
    CHECK(b == doctest::Approx(herald::wigner_negativity(reference, 1e-8)).epsilon(1e-3));
    // Strongly negative states need the finer pair for the same bound.
    const SchemeParams peak{kR8dB, pi, kBalanced, 2};
    const double c = herald::wigner_grid(peak, fine).negativity();
    const double d = herald::wigner_grid(peak, finer).negativity();
    CHECK(std::abs(c - d) < 2e-5);
    CHECK(d == doctest::Approx(herald::wigner_negativity(peak, 1e-8)).epsilon(1e-4));
  }
}

TEST_CASE("negativity") {
  SUBCASE("Gaussian outputs") {
    for (int draw = 0; draw < 5; ++draw) {
      SchemeParams p = random_params(0);
      p.n = 0;
      CHECK(std::abs(herald::wigner_negativity(p, 1e-7)) < 1e-7);
    }
  }
  SUBCASE("single photon plateau") {
    const double exact = 4.0 / std::sqrt(std::exp(1.0)) - 2.0;
    for (const SchemeParams& p : {SchemeParams{kR8dB, pi, kBalanced, 1}, SchemeParams{kR8dB, 0.3, 0.2, 1},
                                  SchemeParams{1.2, 2.0, 0.9, 1}, SchemeParams{0.4, 1.0, 0.5, 1}}) {
      CHECK(herald::wigner_negativity(p, 1e-6) == doctest::Approx(0.426).epsilon(0.002 / 0.426));
    }
    CHECK(herald::wigner_negativity({kR8dB, pi, kBalanced, 1}, 1e-8) ==
          doctest::Approx(exact).epsilon(1e-8));
  }
  SUBCASE("normalization and purity") {
    for (int draw = 0; draw < 8; ++draw) {
      const SchemeParams p = random_params(4);
      const auto report = herald::negativity_report(p, 1e-6);
      CAPTURE(p.n);
      CHECK(std::abs(report.normalization - 1.0) < 1e-6);
      // Every pure state has integral W^2 = 1/(2 pi), the vacuum value.
      CHECK(std::abs(report.purity - 1.0 / (2.0 * pi)) < 1e-6);
      CHECK(report.negativity > -1e-6);
    }
  }
  SUBCASE("maximum of the n = 2 landscape") {
    const double peak = herald::wigner_negativity({kR8dB, pi, kBalanced, 2}, 1e-6);
    for (int draw = 0; draw < 20; ++draw) {
      const SchemeParams p{kR8dB, oracle::uniform(0.0, pi), oracle::uniform(0.0, 1.0), 2};
      CHECK(herald::wigner_negativity(p, 1e-6) <= peak);
    }
  }
  SUBCASE("n = 2 vanishes at the transmission edges") {
    for (double phi : {0.3 * pi, 0.7 * pi, pi}) {
      CHECK(std::abs(herald::wigner_negativity({kR8dB, phi, 0.0, 2}, 1e-7)) < 1e-7);
      CHECK(std::abs(herald::wigner_negativity({kR8dB, phi, 1.0, 2}, 1e-7)) < 1e-7);
      CHECK(herald::wigner_negativity({kR8dB, phi, 0.01, 2}, 1e-7) < 1e-3);
      CHECK(herald::wigner_negativity({kR8dB, phi, 0.999, 2}, 1e-7) < 1e-3);
    }
  }
  SUBCASE("pairs related by a phase-space rotation") {
    // Swapping t and rho leaves the output unchanged up to a rotation.
    const double tol = 1e-6;
    for (double phi : {0.4 * pi, 0.75 * pi}) {
      for (double t : {0.3, 0.55}) {
        const SchemeParams a{kR8dB, phi, t, 3};
        const SchemeParams b{kR8dB, phi, std::sqrt(1.0 - t * t), 3};
        CHECK(std::abs(herald::wigner_negativity(a, tol) - herald::wigner_negativity(b, tol)) < 2 * tol);

        const herald::WignerKernel ka(a);
        const herald::WignerKernel kb(b);
        auto axis = [](const std::array<double, 4>& m) {
          return 0.5 * std::atan2(m[1] + m[2], m[0] - m[3]);
        };
        const double base = axis(kb.envelope()) - axis(ka.envelope());
        double best = INFINITY;
        for (int quarter = 0; quarter < 4; ++quarter) {
          const double angle = base + quarter * pi / 2;
          double worst = 0.0;
          for (double x = -3.0; x <= 3.0; x += 0.5) {
            for (double q = -3.0; q <= 3.0; q += 0.5) {
              const double xr = std::cos(angle) * x - std::sin(angle) * q;
              const double qr = std::sin(angle) * x + std::cos(angle) * q;
              worst = std::max(worst, std::abs(ka(x, q) - kb(xr, qr)));
            }
          }
          best = std::min(best, worst);
        }
        CHECK(best < 1e-10);
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(herald::wigner_negativity({0.5, 1.0, 0.5, 1}, 0.0), std::invalid_argument);
    const herald::WignerKernel kernel({kR8dB, pi, kBalanced, 2});
    const auto frame = herald::PhaseSpaceFrame::from_envelope(kernel.envelope());
    try {
      herald::adaptive_negativity([&](double x, double q) { return kernel(x, q); }, frame, 1.0,
                                  1e-300, 8, 1);
      FAIL("expected ConvergenceError");
    } catch (const herald::ConvergenceError& e) {
      CHECK(std::isfinite(e.previous()));
      CHECK(std::isfinite(e.last()));
      CHECK(e.previous() != e.last());
    }
  }
}
