#include "herald/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "herald/phase_space.hpp"
#include "herald/quadrature.hpp"
#include "herald/targets.hpp"

namespace herald {

namespace {

const double kE2 = std::exp(2.0);
const double kE4 = std::exp(4.0);
const double kRoot73 = std::sqrt(73.0);
const double kRootScat = std::sqrt(36.0 + kE4);

double arccoth(double x) { return 0.5 * std::log((x + 1.0) / (x - 1.0)); }

double scat_q() { return kE2 * kE4 - 13.0 * kE2 + kRootScat * (kE4 + 1.0); }

}  // namespace

double cat_threshold_r() { return arccoth((3.0 + kRoot73) / 8.0); }

double optimal_t_cat(double r) {
  const double threshold = cat_threshold_r();
  if (!(r >= threshold)) {
    throw std::domain_error("optimal_t_cat: r must be >= " + std::to_string(threshold) +
                            " (arccoth((3 + sqrt 73)/8))");
  }
  const double t = 0.25 * std::sqrt((kRoot73 - 3.0) / std::tanh(r) + 8.0);
  return std::min(t, 1.0);
}

double scat_threshold_r() {
  return arccoth((3.0 + 3.0 * kE4 + kE2 * kRootScat) / (2.0 * kE4 - 3.0));
}

double optimal_t_scat(double r) {
  const double threshold = scat_threshold_r();
  if (!(r >= threshold)) {
    throw std::domain_error("optimal_t_scat: r must be >= " + std::to_string(threshold));
  }
  const double num = (kE2 * kRootScat - 3.0 * (1.0 + kE4)) / std::tanh(r) + 4.0 * kE4 - 3.0;
  // tau falls to 0 at the threshold; clamp the rounding there.
  return std::min(std::sqrt(std::max(0.0, num / (8.0 * kE4 - 6.0))), 1.0);
}

double probability_cat_optimal(double r) {
  const double th = std::tanh(r);
  const double ch = std::cosh(r);
  return 4.0 * std::sqrt(2.0) * (32.0 * th * th + 3.0 * kRoot73 - 41.0) /
         (std::pow(3.0 * kRoot73 - 9.0, 1.5) * ch * ch);
}

double probability_scat_optimal(double r) {
  const double q = scat_q();
  const double k = 4.0 * kE4 - 3.0;
  const double c2 = std::cosh(r) * std::cosh(r);
  return (6.0 * kE2 * k * q * c2 - k * k * k) /
         (6.0 * std::sqrt(6.0) * kE2 * std::exp(1.0) * std::pow(q, 1.5) * c2 * c2);
}

ProbabilityOptimum best_probability_cat() {
  const double r = std::acosh(8.0 / std::sqrt(3.0 * kRoot73 - 9.0));
  return {r, probability_cat_optimal(r)};
}

ProbabilityOptimum best_probability_scat() {
  const double k = 4.0 * kE4 - 3.0;
  const double r = std::acosh(std::sqrt(k * k / (3.0 * kE2 * scat_q())));
  return {r, probability_scat_optimal(r)};
}

double evaluate_objective(Objective objective, const SchemeParams& p, double negativity_tol) {
  validate(p);
  const Parity parity = p.n % 2 == 0 ? Parity::even : Parity::odd;
  // The closed fidelities have finite limits where the herald itself is impossible.
  if ((objective == Objective::fidelity_cat || objective == Objective::fidelity_scat) &&
      parity == Parity::odd && is_separable_configuration(p)) {
    throw ImpossibleOutcome("impossible outcome: odd count in a separable configuration");
  }
  switch (objective) {
    case Objective::fidelity_cat:
      if (p.n == 1) return fidelity_cat_closed(p.r, p.t, p.phi);
      return fidelity_numeric(p, TargetState::cat(2.0, parity));
    case Objective::fidelity_scat:
      if (p.n == 1) return fidelity_scat_closed(p.r, p.t, p.phi);
      return fidelity_numeric(p, TargetState::squeezed_cat(0.5, 1.0, parity));
    case Objective::probability:
      return herald_probability(p);
    case Objective::negativity:
      return wigner_negativity(p, negativity_tol);
  }
  throw std::invalid_argument("evaluate_objective: unknown objective");
}

namespace {

void validate_bounds(const Bounds& b, double lo, double hi, const char* name) {
  if (!(b.lo <= b.hi) || b.lo < lo || b.hi > hi) {
    std::ostringstream msg;
    msg << "maximize: " << name << " bounds [" << b.lo << ", " << b.hi << "] must lie in ["
        << lo << ", " << hi << "] with lo <= hi";
    throw std::invalid_argument(msg.str());
  }
}

class Evaluator {
 public:
  Evaluator(Objective objective, const SearchSpace& space)
      : objective_(objective), space_(space) {}

  // Impossible heralding outcomes are not candidates and score -infinity.
  double operator()(const std::array<double, 3>& x) const {
    const SchemeParams p{x[0], x[2], x[1], space_.n};
    try {
      return evaluate_objective(objective_, p, space_.negativity_tol);
    } catch (const ImpossibleOutcome&) {
      return -std::numeric_limits<double>::infinity();
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "objective failed at r=" << p.r << " t=" << p.t << " phi=" << p.phi
          << " n=" << p.n << ": " << e.what();
      throw std::runtime_error(msg.str());
    }
  }

 private:
  Objective objective_;
  SearchSpace space_;
};

}  // namespace

MaximizeResult maximize(Objective objective, const SearchSpace& space) {
  validate_bounds(space.r, 0.0, std::numeric_limits<double>::max(), "r");
  validate_bounds(space.t, 0.0, 1.0, "t");
  validate_bounds(space.phi, 0.0, pi, "phi");
  if (space.n < 0) throw std::invalid_argument("maximize: n must be >= 0");
  if (space.grid_points < 2) throw std::invalid_argument("maximize: grid_points must be >= 2");
  if (!(space.step_tol > 0.0)) throw std::invalid_argument("maximize: step_tol must be > 0");

  const std::array<Bounds, 3> bounds{space.r, space.t, space.phi};
  std::vector<int> free;
  for (int d = 0; d < 3; ++d) {
    if (!bounds[d].fixed()) free.push_back(d);
  }
  const Evaluator f(objective, space);

  // Coarse grid, row-major over the free coordinates in (r, t, phi) order.
  std::size_t total = 1;
  for (std::size_t k = 0; k < free.size(); ++k) total *= space.grid_points;
  auto grid_point = [&](std::size_t idx) {
    std::array<double, 3> x{bounds[0].lo, bounds[1].lo, bounds[2].lo};
    for (auto it = free.rbegin(); it != free.rend(); ++it) {
      const int d = *it;
      const std::size_t i = idx % space.grid_points;
      idx /= space.grid_points;
      x[d] = bounds[d].lo + (bounds[d].hi - bounds[d].lo) * static_cast<double>(i) /
                                (space.grid_points - 1);
    }
    return x;
  };
  std::vector<double> values(total);
  parallel_for(total, [&](std::size_t idx) { values[idx] = f(grid_point(idx)); });

  MaximizeResult result;
  result.evaluations = static_cast<int>(total);
  const std::size_t best_idx =
      static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  std::array<double, 3> x = grid_point(best_idx);
  double fx = values[best_idx];

  std::array<double, 3> step{};
  for (int d : free) step[d] = 0.5 * (bounds[d].hi - bounds[d].lo) / (space.grid_points - 1);
  auto largest_step = [&] {
    double s = 0.0;
    for (int d : free) s = std::max(s, step[d]);
    return s;
  };

  while (!free.empty() && largest_step() >= space.step_tol) {
    std::array<double, 3> best_x = x;
    double best_f = fx;
    for (int d : free) {
      for (double sign : {1.0, -1.0}) {
        std::array<double, 3> y = x;
        y[d] = std::clamp(x[d] + sign * step[d], bounds[d].lo, bounds[d].hi);
        if (y[d] == x[d]) continue;
        const double fy = f(y);
        ++result.evaluations;
        if (fy > best_f) {
          best_f = fy;
          best_x = y;
        }
      }
    }
    if (best_f > fx) {
      x = best_x;
      fx = best_f;
    } else {
      for (int d : free) step[d] *= 0.5;
    }
  }

  result.params = {x[0], x[2], x[1], space.n};
  result.value = fx;
  return result;
}

}  // namespace herald
