#include <cmath>
#include <string>

#include "doctest.h"
#include "herald/optimize.hpp"
#include "herald/targets.hpp"
#include "oracles.hpp"

using herald::Objective;
using herald::pi;
using herald::SearchSpace;

namespace {

const double kR8dB = 8.0 * std::log(10.0) / 20.0;

}  // namespace

TEST_CASE("cat optimum") {
  SUBCASE("threshold") {
    const double r0 = herald::cat_threshold_r();
    CHECK(r0 == doctest::Approx(0.85371).epsilon(1e-5));
    CHECK(1.0 / std::tanh(r0) == doctest::Approx((3.0 + std::sqrt(73.0)) / 8.0).epsilon(1e-14));
    CHECK(herald::nepers_to_db(r0) == doctest::Approx(7.42).epsilon(1e-3));
    CHECK(herald::optimal_t_cat(r0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(herald::optimal_t_cat(0.8), std::domain_error);
    try {
      herald::optimal_t_cat(0.5);
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("0.8537") != std::string::npos);
    }
  }
  SUBCASE("range and limit") {
    for (double r = herald::cat_threshold_r() + 1e-3; r < 5.0; r += 0.1) {
      const double t = herald::optimal_t_cat(r);
      CHECK(t > 0.0);
      CHECK(t < 1.0);
    }
    CHECK(herald::optimal_t_cat(30.0) == doctest::Approx(0.25 * std::sqrt(5.0 + std::sqrt(73.0))).epsilon(1e-12));
    CHECK(herald::optimal_t_cat(30.0) == doctest::Approx(0.9201).epsilon(1e-4));
  }
  SUBCASE("local maximum in t") {
    const double t = herald::optimal_t_cat(1.0);
    const double f = herald::fidelity_cat_closed(1.0, t, pi);
    CHECK(f >= herald::fidelity_cat_closed(1.0, t - 0.02, pi));
    CHECK(f >= herald::fidelity_cat_closed(1.0, std::min(1.0, t + 0.02), pi));
    for (double phi : {0.9 * pi, 0.99 * pi}) CHECK(f >= herald::fidelity_cat_closed(1.0, t, phi));
  }
  SUBCASE("fidelity constant on the optimal manifold") {
    double lo = 1.0, hi = 0.0;
    for (double r = 0.86; r <= 1.4 + 1e-12; r += 0.01) {
      const double f = herald::fidelity_cat_closed(r, herald::optimal_t_cat(r), pi);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    CHECK(hi - lo < 1e-3);
  }
}

TEST_CASE("cat probability optimum") {
  const auto best = herald::best_probability_cat();
  CHECK(best.r == doctest::Approx(std::acosh(8.0 / std::sqrt(3.0 * std::sqrt(73.0) - 9.0))).epsilon(1e-14));
  CHECK(std::abs(best.r - 1.2946) < 0.01);
  CHECK(std::abs(best.probability - 0.18) < 0.005);
  CHECK(std::abs(herald::nepers_to_db(best.r) - 11.24) < 0.01);
  CHECK(best.probability >= herald::probability_cat_optimal(best.r - 0.05));
  CHECK(best.probability >= herald::probability_cat_optimal(best.r + 0.05));
  for (double r = herald::cat_threshold_r(); r <= 1.6; r += 0.02) {
    const double closed = herald::probability_cat_optimal(r);
    CHECK(closed == doctest::Approx(herald::herald_probability({r, pi, herald::optimal_t_cat(r), 1})).epsilon(1e-10));
    CHECK(closed <= best.probability + 1e-15);
  }
}

TEST_CASE("squeezed-cat optimum") {
  SUBCASE("threshold and transmission") {
    const double r0 = herald::scat_threshold_r();
    CHECK(std::abs(r0 - 0.48) < 0.005);
    // Unlike the cat case, the transmission closes at the threshold.
    CHECK(herald::optimal_t_scat(r0) < 1e-6);
    CHECK(herald::optimal_t_scat(r0 + 0.01) > herald::optimal_t_scat(r0));
    CHECK_THROWS_AS(herald::optimal_t_scat(0.4), std::domain_error);
    for (double r = r0 + 1e-3; r < 5.0; r += 0.1) {
      CHECK(herald::optimal_t_scat(r) > 0.0);
      CHECK(herald::optimal_t_scat(r) < 1.0);
    }
    const double limit = herald::optimal_t_scat(40.0);
    CHECK(limit > 0.0);
    CHECK(limit < 1.0);
    CHECK(limit == doctest::Approx(herald::optimal_t_scat(20.0)).epsilon(1e-12));
  }
  SUBCASE("local maximum in t") {
    const double t = herald::optimal_t_scat(1.032);
    const double f = herald::fidelity_scat_closed(1.032, t, pi);
    CHECK(f >= herald::fidelity_scat_closed(1.032, t - 0.02, pi));
    CHECK(f >= herald::fidelity_scat_closed(1.032, t + 0.02, pi));
  }
  SUBCASE("probability") {
    const auto best = herald::best_probability_scat();
    CHECK(std::abs(best.r - 1.032) < 0.01);
    CHECK(std::abs(best.probability - 0.22) < 0.005);
    CHECK(std::abs(herald::nepers_to_db(best.r) - 8.97) < 0.02);
    CHECK(best.probability >= herald::probability_scat_optimal(best.r - 0.05));
    CHECK(best.probability >= herald::probability_scat_optimal(best.r + 0.05));
    for (double r = 0.6; r <= 1.4 + 1e-12; r += 0.02) {
      const double direct = herald::herald_probability({r, pi, herald::optimal_t_scat(r), 1});
      CHECK(std::abs(herald::probability_scat_optimal(r) - direct) < 1e-7);
    }
  }
}

TEST_CASE("maximizer") {
  SUBCASE("recovers the cat optimum") {
    SearchSpace space;
    space.r = {1.0, 1.0};
    const auto res = herald::maximize(Objective::fidelity_cat, space);
    CHECK(std::abs(res.params.t - herald::optimal_t_cat(1.0)) < 1e-3);
    CHECK(std::abs(res.params.phi - pi) < 1e-3);
    CHECK(res.params.r == 1.0);
    CHECK(res.params.n == 1);
    CHECK(res.value == doctest::Approx(herald::fidelity_cat_closed(1.0, herald::optimal_t_cat(1.0), pi)).epsilon(1e-8));
  }
  SUBCASE("recovers the squeezed-cat optimum") {
    SearchSpace space;
    space.r = {1.032, 1.032};
    const auto res = herald::maximize(Objective::fidelity_scat, space);
    CHECK(std::abs(res.params.t - herald::optimal_t_scat(1.032)) < 1e-3);
    CHECK(std::abs(res.params.phi - pi) < 1e-3);
  }
  SUBCASE("probability in r against a dense scan") {
    SearchSpace space;
    space.t = {0.95, 0.95};
    space.phi = {pi, pi};
    space.r = {0.2, 2.0};
    const auto res = herald::maximize(Objective::probability, space);
    double grid_best = 0.0;
    for (int i = 0; i <= 1800; ++i) {
      grid_best = std::max(grid_best, herald::herald_probability({0.2 + 1.8 * i / 1800.0, pi, 0.95, 1}));
    }
    CHECK(res.value >= grid_best - 1e-9);
  }
  SUBCASE("recovers the Fock point for negativity") {
    SearchSpace space;
    space.r = {kR8dB, kR8dB};
    space.n = 2;
    space.grid_points = 5;
    space.negativity_tol = 1e-6;
    const auto res = herald::maximize(Objective::negativity, space);
    CHECK(std::abs(res.params.t - 1.0 / std::sqrt(2.0)) < 1e-3);
    CHECK(std::abs(res.params.phi - pi) < 1e-3);
    CHECK(res.value == doctest::Approx(0.7289892578).epsilon(1e-5));
  }
  SUBCASE("degenerate bounds return the point") {
    SearchSpace space;
    space.r = {0.7, 0.7};
    space.t = {0.3, 0.3};
    space.phi = {2.0, 2.0};
    const auto res = herald::maximize(Objective::fidelity_cat, space);
    CHECK(res.params.r == 0.7);
    CHECK(res.params.t == 0.3);
    CHECK(res.params.phi == 2.0);
    CHECK(res.evaluations == 1);
    CHECK(res.value == herald::fidelity_cat_closed(0.7, 0.3, 2.0));
  }
  SUBCASE("impossible heralds are skipped") {
    SearchSpace space;
    space.r = {1.0, 1.0};
    const auto res = herald::maximize(Objective::fidelity_scat, space);
    CHECK(res.params.phi > 0.0);
    CHECK_THROWS_AS(herald::evaluate_objective(Objective::fidelity_cat, {1.0, 0.0, 0.5, 1}, 1e-6),
                    herald::ImpossibleOutcome);
  }
  SUBCASE("failures name the parameters") {
    SearchSpace space;
    space.r = {0.5, 0.5};
    space.t = {0.4, 0.4};
    space.phi = {1.5, 1.5};
    space.n = 2;
    space.negativity_tol = 0.0;
    try {
      herald::maximize(Objective::negativity, space);
      FAIL("expected the objective to fail");
    } catch (const std::runtime_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("r=0.5") != std::string::npos);
      CHECK(msg.find("t=0.4") != std::string::npos);
      CHECK(msg.find("phi=1.5") != std::string::npos);
      CHECK(msg.find("n=2") != std::string::npos);
    }
  }
  SUBCASE("invalid bounds") {
    SearchSpace space;
    space.t = {0.2, 1.2};
    CHECK_THROWS_AS(herald::maximize(Objective::probability, space), std::invalid_argument);
    space = {};
    space.phi = {2.0, 1.0};
    CHECK_THROWS_AS(herald::maximize(Objective::probability, space), std::invalid_argument);
    space = {};
    space.grid_points = 1;
    CHECK_THROWS_AS(herald::maximize(Objective::probability, space), std::invalid_argument);
  }
  SUBCASE("deterministic") {
    SearchSpace space;
    space.r = {0.9, 0.9};
    const auto a = herald::maximize(Objective::fidelity_scat, space);
    const auto b = herald::maximize(Objective::fidelity_scat, space);
    CHECK(a.params.t == b.params.t);
    CHECK(a.params.phi == b.params.phi);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
  }
}

TEST_CASE("orthogonal phase dominates") {
  for (int i = 0; i < 10; ++i) {
    const double r = oracle::uniform(herald::cat_threshold_r() + 0.01, 1.4);
    const double best = herald::fidelity_cat_closed(r, herald::optimal_t_cat(r), pi);
    for (double phi : {0.6 * pi, 0.8 * pi}) {
      SearchSpace space;
      space.r = {r, r};
      space.phi = {phi, phi};
      space.grid_points = 21;
      CHECK(best > herald::maximize(Objective::fidelity_cat, space).value);
    }
  }
}
