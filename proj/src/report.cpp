#include "herald/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "herald/entanglement.hpp"
#include "herald/quadrature.hpp"

namespace herald {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

CsvTable wigner_table(const WignerGrid& grid) {
  CsvTable table{{"x", "p", "W"}, {}};
  table.rows.reserve(grid.values.size());
  for (int i = 0; i < grid.spec.nx; ++i) {
    for (int j = 0; j < grid.spec.np; ++j) table.rows.push_back({grid.x(i), grid.p(j), grid.at(i, j)});
  }
  return table;
}

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  v.back() = hi;
  return v;
}

}  // namespace

CsvTable NegativitySurface::table() const {
  CsvTable out{{"phi", "t", "negativity"}, {}};
  for (std::size_t i = 0; i < phi.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) out.rows.push_back({phi[i], t[j], at(i, j)});
  }
  return out;
}

NegativitySurface negativity_surface(int n, double r, int phi_steps, int t_steps, double tol) {
  if (phi_steps < 2 || t_steps < 2) {
    throw std::invalid_argument("negativity_surface: phi_steps and t_steps must be >= 2");
  }
  if (n < 0) throw std::invalid_argument("negativity_surface: n must be >= 0");
  if (!(r >= 0.0)) throw std::invalid_argument("negativity_surface: r must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("negativity_surface: tol must be > 0");
  NegativitySurface s;
  s.n = n;
  s.r = r;
  s.phi = linspace(0.0, pi, phi_steps);
  s.t = linspace(0.0, 1.0, t_steps);
  const std::size_t count = s.phi.size() * s.t.size();
  s.negativity.assign(count, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> failures(count);
  parallel_for(count, [&](std::size_t idx) {
    const SchemeParams p{r, s.phi[idx / s.t.size()], s.t[idx % s.t.size()], n};
    try {
      s.negativity[idx] = wigner_negativity(p, tol);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "phi=" << p.phi << " t=" << p.t << ": " << e.what();
      failures[idx] = msg.str();
    }
  });
  for (auto& f : failures) {
    if (!f.empty()) s.warnings.push_back(std::move(f));
  }
  return s;
}

CsvTable EntanglementMap::table() const {
  CsvTable out{{"phi", "t", "degree"}, {}};
  for (std::size_t i = 0; i < phi.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      out.rows.push_back({phi[i], t[j], degree[i * t.size() + j]});
    }
  }
  return out;
}

CsvTable EntanglementMap::boundary_table() const {
  CsvTable out{{"phi", "t"}, {}};
  for (const auto& [ph, tt] : boundary) out.rows.push_back({ph, tt});
  return out;
}

EntanglementMap entanglement_map(double r, int resolution) {
  if (resolution < 2) throw std::invalid_argument("entanglement_map: resolution must be >= 2");
  if (!(r >= 0.0)) throw std::invalid_argument("entanglement_map: r must be >= 0");
  EntanglementMap m;
  m.r = r;
  m.phi = linspace(0.0, pi, resolution);
  m.t = linspace(0.0, 1.0, resolution);
  m.degree.reserve(m.phi.size() * m.t.size());
  for (double ph : m.phi) {
    for (double tt : m.t) m.degree.push_back(entanglement_degree(r, ph, tt).degree);
  }
  const auto samples = separability_boundary(r, resolution);
  std::vector<std::pair<double, double>> upper;
  for (const auto& s : samples) {
    if (!s.entangled) continue;
    m.boundary.emplace_back(s.phi, s.entangled->t_low);
    upper.emplace_back(s.phi, s.entangled->t_high);
  }
  m.boundary.insert(m.boundary.end(), upper.rbegin(), upper.rend());
  return m;
}

}  // namespace herald
