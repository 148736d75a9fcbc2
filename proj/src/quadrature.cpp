#include "herald/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

namespace herald {

unsigned thread_count() {
  if (const char* env = std::getenv("HERALD_THREADS")) {
    try {
      const int requested = std::stoi(env);
      if (requested > 0) return static_cast<unsigned>(requested);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

namespace {

constexpr int kMinIntervals = 256;
constexpr int kMaxIntervals = 1 << 20;
constexpr int kMaxWidenings = 8;

struct TrapezoidResult {
  complex value;
  bool converged;
};

TrapezoidResult trapezoid_refined(const std::function<complex(double)>& f, double half_width,
                                  double tol) {
  int intervals = 64;
  double h = 2.0 * half_width / intervals;
  complex sum = 0.5 * (f(-half_width) + f(half_width));
  for (int i = 1; i < intervals; ++i) sum += f(-half_width + i * h);
  complex estimate = sum * h;
  while (intervals < kMaxIntervals) {
    // Add the midpoints of the current intervals.
    for (int i = 0; i < intervals; ++i) sum += f(-half_width + (i + 0.5) * h);
    intervals *= 2;
    h *= 0.5;
    const complex refined = sum * h;
    const double scale = std::max(1.0, std::abs(refined));
    const bool settled = std::abs(refined - estimate) <= tol * scale;
    estimate = refined;
    if (settled && intervals >= kMinIntervals) return {estimate, true};
  }
  return {estimate, false};
}

}  // namespace

complex integrate_line(const std::function<complex(double)>& f, double half_width,
                       double tol) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("integrate_line: half_width must be positive and finite");
  }
  TrapezoidResult current = trapezoid_refined(f, half_width, tol);
  for (int round = 0; round < kMaxWidenings; ++round) {
    half_width *= 1.5;
    const TrapezoidResult wider = trapezoid_refined(f, half_width, tol);
    const double scale = std::max(1.0, std::abs(wider.value));
    if (current.converged && wider.converged &&
        std::abs(wider.value - current.value) <= tol * scale) {
      return wider.value;
    }
    current = wider;
  }
  throw ConvergenceError("integrate_line: no convergence", 0.0, std::abs(current.value));
}

PhaseSpaceFrame PhaseSpaceFrame::from_envelope(const std::array<double, 4>& M) {
  const double a = M[0];
  const double b = 0.5 * (M[1] + M[2]);
  const double d = M[3];
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  const double lambda1 = mean + radius;
  const double lambda2 = mean - radius;
  if (!(lambda2 > 0.0)) {
    throw std::domain_error("PhaseSpaceFrame: envelope matrix is not positive definite");
  }
  // Unit eigenvector for lambda1; the second is its rotation by 90 degrees.
  double vx = 1.0;
  double vy = 0.0;
  if (radius > 0.0) {
    const double angle = 0.5 * std::atan2(2.0 * b, a - d);
    vx = std::cos(angle);
    vy = std::sin(angle);
  }
  const double s1 = 1.0 / std::sqrt(lambda1);
  const double s2 = 1.0 / std::sqrt(lambda2);
  PhaseSpaceFrame frame;
  frame.L = {vx * s1, -vy * s2, vy * s1, vx * s2};
  return frame;
}

PhaseSpaceFrame PhaseSpaceFrame::from_covariance(const std::array<double, 4>& S) {
  const double det = S[0] * S[3] - S[1] * S[2];
  if (!(det > 0.0)) {
    throw std::domain_error("PhaseSpaceFrame: covariance is not positive definite");
  }
  // Gaussian exp(-v^T S^{-1} v / 2): envelope matrix S^{-1} / 2.
  const double scale = 0.5 / det;
  return from_envelope({S[3] * scale, -S[1] * scale, -S[2] * scale, S[0] * scale});
}

namespace {

constexpr std::array<double, 5> kGaussNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

void accumulate_piece(const std::function<double(double)>& g, double lo, double hi,
                      PhaseSpaceMoments& row) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    const double value = g(mid + half * kGaussNodes[i]);
    const double weight = half * kGaussWeights[i];
    row.abs_integral += weight * std::abs(value);
    row.integral += weight * value;
    row.square_integral += weight * value * value;
  }
}

double bracket_root(const std::function<double(double)>& g, double lo, double hi, double g_lo,
                    double g_hi) {
  boost::uintmax_t iterations = 64;
  const auto root = boost::math::tools::toms748_solve(
      g, lo, hi, g_lo, g_hi, boost::math::tools::eps_tolerance<double>(48), iterations);
  return 0.5 * (root.first + root.second);
}

}  // namespace

namespace {

constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639, 0.949107912342758525, 0.864864423359769073, 0.741531185599394440,
    0.586087235467691130, 0.405845151377397167, 0.207784955007898468, 0.0};
constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529225, 0.063092092629978553, 0.104790010322250184, 0.140653259715525919,
    0.169004726639267903, 0.190350578064785410, 0.204432940075298892, 0.209482141084727828};
// Gauss weights for the odd-indexed Kronrod nodes (the 7-point rule).
constexpr std::array<double, 4> kGauss7Weights{0.129484966168869693, 0.279705391489276668,
                                               0.381830050505118945, 0.417959183673469388};

PhaseSpaceMoments scaled(const PhaseSpaceMoments& m, double s) {
  return {m.abs_integral * s, m.integral * s, m.square_integral * s};
}

void add_to(PhaseSpaceMoments& total, const PhaseSpaceMoments& m, double s) {
  total.abs_integral += s * m.abs_integral;
  total.integral += s * m.integral;
  total.square_integral += s * m.square_integral;
}

// Adaptive Gauss-Kronrod (7/15) over u1 for the row integrals. The row
// integral of |W| has square-root kinks where rows graze a nodal line, so a
// fixed rule converges slowly; bisection concentrates points there.
PhaseSpaceMoments outer_adaptive(const std::function<PhaseSpaceMoments(double)>& row, double lo,
                                 double hi, double tol, int depth) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  PhaseSpaceMoments kronrod;
  PhaseSpaceMoments gauss;
  for (std::size_t i = 0; i < kKronrodNodes.size(); ++i) {
    const bool centre = i + 1 == kKronrodNodes.size();
    PhaseSpaceMoments f = row(mid - half * kKronrodNodes[i]);
    if (!centre) add_to(f, row(mid + half * kKronrodNodes[i]), 1.0);
    add_to(kronrod, f, kKronrodWeights[i]);
    if (i % 2 == 1) add_to(gauss, f, kGauss7Weights[i / 2]);
  }
  kronrod = scaled(kronrod, half);
  gauss = scaled(gauss, half);
  const double error = std::abs(kronrod.abs_integral - gauss.abs_integral);
  if (error <= tol || depth >= 40) return kronrod;
  PhaseSpaceMoments total = outer_adaptive(row, lo, mid, 0.5 * tol, depth + 1);
  add_to(total, outer_adaptive(row, mid, hi, 0.5 * tol, depth + 1), 1.0);
  return total;
}

}  // namespace

PhaseSpaceMoments integrate_phase_space(const std::function<double(double, double)>& w,
                                        const PhaseSpaceFrame& frame, double half_width,
                                        int cells, double tol) {
  if (cells < 2) throw std::invalid_argument("integrate_phase_space: cells must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_phase_space: tol must be positive");
  const double h = 2.0 * half_width / cells;
  const int points = cells + 1;
  const double jac = frame.jacobian();

  const std::function<PhaseSpaceMoments(double)> row = [&](double u1) {
    const std::function<double(double)> g = [&](double u2) {
      const auto v = frame.map(u1, u2);
      return w(v[0], v[1]);
    };
    std::vector<double> samples(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j) samples[j] = g(-half_width + j * h);

    PhaseSpaceMoments sum;
    for (int j = 0; j < cells; ++j) {
      const double lo = -half_width + j * h;
      const double hi = lo + h;
      if (samples[j] * samples[j + 1] < 0.0) {
        const double root = bracket_root(g, lo, hi, samples[j], samples[j + 1]);
        accumulate_piece(g, lo, root, sum);
        accumulate_piece(g, root, hi, sum);
      } else {
        accumulate_piece(g, lo, hi, sum);
      }
    }
    return scaled(sum, jac);
  };

  // Independent strips of the u1 range run in parallel.
  constexpr int kStrips = 16;
  const double strip = 2.0 * half_width / kStrips;
  std::vector<PhaseSpaceMoments> parts(kStrips);
  parallel_for(parts.size(), [&](std::size_t k) {
    const double lo = -half_width + static_cast<double>(k) * strip;
    parts[k] = outer_adaptive(row, lo, lo + strip, tol / kStrips, 0);
  });
  PhaseSpaceMoments total;
  for (const auto& part : parts) add_to(total, part, 1.0);
  return total;
}

NegativityResult adaptive_negativity(const std::function<double(double, double)>& w,
                                     const PhaseSpaceFrame& frame, double start_half_width,
                                     double tol, int start_cells, int max_rounds) {
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_negativity: tol must be positive");
  double half_width = start_half_width;
  int cells = start_cells;
  // Each pass integrates to a tenth of the requested change tolerance.
  const double pass_tol = 0.1 * tol;
  PhaseSpaceMoments previous = integrate_phase_space(w, frame, half_width, cells, pass_tol);
  for (int round = 1; round <= max_rounds; ++round) {
    half_width *= 1.25;
    cells *= 2;
    const PhaseSpaceMoments current =
        integrate_phase_space(w, frame, half_width, cells, pass_tol);
    const double neg_prev = previous.abs_integral - 1.0;
    const double neg_curr = current.abs_integral - 1.0;
    if (std::abs(neg_curr - neg_prev) < tol) {
      return {neg_curr, current.integral, current.square_integral, half_width, cells, round};
    }
    if (round == max_rounds) {
      throw ConvergenceError("adaptive_negativity: estimates did not settle", neg_prev,
                             neg_curr);
    }
    previous = current;
  }
  throw ConvergenceError("adaptive_negativity: no refinement rounds allowed", 0.0,
                         previous.abs_integral - 1.0);
}

}  // namespace herald
