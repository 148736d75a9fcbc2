#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace herald {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Raised when a requested detector outcome has zero probability.
class ImpossibleOutcome : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numerical procedure stopped before meeting its tolerance.
/// Carries the last two estimates so the caller can judge how close it got.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what + " (previous estimate " + std::to_string(previous) +
                           ", last estimate " + std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace herald
