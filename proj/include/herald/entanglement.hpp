#pragma once

#include <optional>
#include <vector>

namespace herald {

/// Van Loock-Furusawa test applied to the two beam-splitter outputs.
///
/// With nullifiers N1 = t X1 + rho X2 and
/// N2 = -rho (X1 cos(phi/2) + Y1 sin(phi/2)) + t (X2 cos(phi/2) + Y2 sin(phi/2))
/// the separability bound reads e^{-2r}/2 + e^{-2r}/2 >= 2 t rho sin(phi/2);
/// degree is the ratio of the right side to the left. The criterion is only
/// sufficient for entanglement: degree <= 1 means "separable by this
/// criterion", not provably separable.
struct EntanglementReport {
  double degree = 0.0;
  bool entangled = false;
  double nullifier_variance_sum = 0.0;
};

EntanglementReport entanglement_degree(double r, double phi, double t);

struct TransmissionInterval {
  double t_low;
  double t_high;
};

struct BoundarySample {
  double phi;
  std::optional<TransmissionInterval> entangled;  // open interval where degree > 1
};

/// For phi_samples phases evenly spaced on [0, pi], the transmission range in
/// which the criterion certifies entanglement.
std::vector<BoundarySample> separability_boundary(double r, int phi_samples);

}  // namespace herald
