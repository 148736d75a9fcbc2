#pragma once

// Parameter sweeps behind the figure data, and the fixed-format CSV output
// they are written in.

#include <iosfwd>
#include <string>
#include <vector>

#include "herald/phase_space.hpp"

namespace herald {

/// "%.17g"; NaN and infinities print as nan, inf, -inf.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& out) const;
};

/// Writes to `path`, or to stdout when path is "-" or empty.
void write_text(const std::string& path, const std::string& text);

CsvTable wigner_table(const WignerGrid& grid);

/// Negativity over phi = pi i / (phi_steps - 1), t = j / (t_steps - 1).
/// Points whose evaluation fails are NaN and listed in warnings.
struct NegativitySurface {
  int n = 0;
  double r = 0.0;
  std::vector<double> phi;
  std::vector<double> t;
  std::vector<double> negativity;  // index i * t.size() + j
  std::vector<std::string> warnings;

  double at(std::size_t i, std::size_t j) const { return negativity[i * t.size() + j]; }
  CsvTable table() const;
};

NegativitySurface negativity_surface(int n, double r, int phi_steps, int t_steps, double tol);

/// Entanglement degree on the same kind of (phi, t) grid, plus the boundary
/// of the entangled region as (phi, t) vertices: the lower edge left to
/// right followed by the upper edge right to left.
struct EntanglementMap {
  double r = 0.0;
  std::vector<double> phi;
  std::vector<double> t;
  std::vector<double> degree;  // index i * t.size() + j
  std::vector<std::pair<double, double>> boundary;

  CsvTable table() const;
  CsvTable boundary_table() const;
};

EntanglementMap entanglement_map(double r, int resolution);

}  // namespace herald
