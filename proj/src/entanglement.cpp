#include "herald/entanglement.hpp"

#include <cmath>
#include <stdexcept>

#include "herald/common.hpp"

namespace herald {

EntanglementReport entanglement_degree(double r, double phi, double t) {
  if (!(r >= 0.0) || !(phi >= 0.0 && phi <= pi) || !(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("entanglement_degree: parameters out of range");
  }
  EntanglementReport report;
  report.degree = 2.0 * t * std::sqrt(1.0 - t * t) * std::sin(0.5 * phi) * std::exp(2 * r);
  report.entangled = report.degree > 1.0;
  report.nullifier_variance_sum = 0.5 * std::exp(-2 * r) + 0.5 * std::exp(-2 * r);
  return report;
}

std::vector<BoundarySample> separability_boundary(double r, int phi_samples) {
  if (phi_samples < 2) throw std::invalid_argument("separability_boundary: phi_samples >= 2");
  if (!(r >= 0.0)) throw std::invalid_argument("separability_boundary: r must be >= 0");
  std::vector<BoundarySample> samples;
  samples.reserve(static_cast<std::size_t>(phi_samples));
  for (int i = 0; i < phi_samples; ++i) {
    const double phi = pi * i / (phi_samples - 1);
    BoundarySample sample{phi, std::nullopt};
    // degree > 1  <=>  2 t sqrt(1 - t^2) > q,  q = e^{-2r} / sin(phi/2);
    // with u = t^2 the boundary is 4 u (1 - u) = q^2.
    const double s = std::sin(0.5 * phi);
    if (s > 0.0) {
      const double q = std::exp(-2 * r) / s;
      if (q < 1.0) {
        const double root = std::sqrt((1.0 - q) * (1.0 + q));
        // 1 - root = q^2 / (1 + root) avoids cancellation for small q.
        sample.entangled = TransmissionInterval{q / std::sqrt(2.0 * (1.0 + root)),
                                                std::sqrt(0.5 * (1.0 + root))};
      }
    }
    samples.push_back(sample);
  }
  return samples;
}

}  // namespace herald
