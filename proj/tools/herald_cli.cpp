// herald: data emitter for the two-squeezer heralding scheme.
//
// Exit codes
//   0  success (or --help)
//   1  numerical or I/O failure
//   2  bad flags
//   3  parameters outside their domain, impossible detector outcome
//   4  verify found a tolerance breach

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "herald/entanglement.hpp"
#include "herald/fock_oracle.hpp"
#include "herald/optimize.hpp"
#include "herald/phase_space.hpp"
#include "herald/quadrature.hpp"
#include "herald/report.hpp"
#include "herald/scheme.hpp"
#include "herald/targets.hpp"
#include "json.hpp"

namespace {

using herald::pi;
using herald::SchemeParams;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": cannot parse '" + text + "'");
  }
  if (used != s.size()) throw UsageError(what + ": cannot parse '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw UsageError(what + ": expected an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

// Radians, with pi literals: "pi", "-pi", "0.5pi", "0.5*pi", "pi/2", "3pi/4".
double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_number(s, "angle");
  std::string coeff = trim(s.substr(0, at));
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
  double factor = 1.0;
  if (coeff == "-") {
    factor = -1.0;
  } else if (!coeff.empty() && coeff != "+") {
    factor = parse_number(coeff, "angle");
  }
  const std::string rest = trim(s.substr(at + 2));
  if (rest.empty()) return factor * pi;
  if (rest[0] != '/') throw UsageError("angle: cannot parse '" + text + "'");
  const double d = parse_number(rest.substr(1), "angle");
  if (d == 0.0) throw UsageError("angle: division by zero in '" + text + "'");
  return factor * pi / d;
}

// "r=0.9,phi=pi,t=0.7,n=2"; r_db may replace r.
SchemeParams parse_params(const std::string& text) {
  SchemeParams p{0.0, pi, 1.0 / std::sqrt(2.0), 1};
  bool have_r = false;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--params: expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = item.substr(eq + 1);
    if (key == "r") {
      p.r = parse_number(value, "r");
      have_r = true;
    } else if (key == "r_db" || key == "r-db") {
      p.r = herald::db_to_nepers(parse_number(value, "r_db"));
      have_r = true;
    } else if (key == "phi") {
      p.phi = parse_angle(value);
    } else if (key == "t") {
      p.t = parse_number(value, "t");
    } else if (key == "n") {
      p.n = parse_int(value, "n");
    } else {
      throw UsageError("--params: unknown key '" + key + "'");
    }
  }
  if (!have_r) throw UsageError("--params: r (or r_db) is required");
  return p;
}

// Squeezing given either in nepers or in decibels.
struct Squeezing {
  std::optional<double> r;
  std::optional<double> r_db;

  void add(CLI::App* cmd) {
    auto* a = cmd->add_option("--r", r, "squeezing in nepers");
    auto* b = cmd->add_option("--r-db", r_db, "squeezing in dB");
    a->excludes(b);
  }
  double value() const {
    if (r) return *r;
    if (r_db) return herald::db_to_nepers(*r_db);
    throw UsageError("one of --r or --r-db is required");
  }
};

Json params_json(const SchemeParams& p) {
  Json j;
  j["r"] = p.r;
  j["r_db"] = herald::nepers_to_db(p.r);
  j["phi"] = p.phi;
  j["t"] = p.t;
  j["n"] = p.n;
  return j;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    herald::write_text(path, text);
  }
}

std::string render(const herald::CsvTable& table) {
  std::ostringstream out;
  table.write(out);
  return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Sidecar next to a file output; with stdout output only when asked for.
void emit_sidecar(const std::string& out, const std::string& meta, const Json& j) {
  if (!meta.empty()) {
    emit(meta, dump(j));
  } else if (!out.empty() && out != "-") {
    herald::write_text(out + ".json", dump(j));
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// ---------------------------------------------------------------------------

struct WavefunctionCmd {
  Squeezing sq;
  std::string phi = "pi";
  double t = 1.0 / std::sqrt(2.0);
  int n = 1;
  double x_min = -6.0;
  double x_max = 6.0;
  int points = 241;
  std::string out;
  std::string meta;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("wavefunction", "position wavefunction of the heralded state");
    sq.add(cmd);
    cmd->add_option("--phi", phi, "relative phase (radians, pi literals allowed)")->capture_default_str();
    cmd->add_option("--t", t, "amplitude transmission")->capture_default_str();
    cmd->add_option("--n", n, "detected photon count")->capture_default_str();
    cmd->add_option("--x-min", x_min)->capture_default_str();
    cmd->add_option("--x-max", x_max)->capture_default_str();
    cmd->add_option("--points", points)->capture_default_str();
    cmd->add_option("--out", out, "CSV path, '-' for stdout");
    cmd->add_option("--meta", meta, "JSON sidecar path (default <out>.json)");
    cmd->callback([this] { run(); });
  }

  void run() {
    const SchemeParams p{sq.value(), parse_angle(phi), t, n};
    herald::validate(p);
    require(points >= 2, "points must be >= 2");
    require(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max,
            "x-min must be below x-max");
    const auto psi = herald::output_wavefunction(p);

    herald::CsvTable table{{"x", "re", "im", "abs2"}, {}};
    table.rows.reserve(points);
    for (int i = 0; i < points; ++i) {
      const double x = x_min + (x_max - x_min) * i / (points - 1);
      const herald::complex v = psi(x);
      table.rows.push_back({x, v.real(), v.imag(), std::norm(v)});
    }
    emit(out, render(table));

    const double width = 1.0 / std::sqrt(-psi.envelope_coeff.real());
    const double norm = herald::integrate_line(
                            [&](double x) { return herald::complex(std::norm(psi(x))); },
                            width * (6.0 + std::sqrt(n + 1.0)))
                            .real();
    Json j;
    j["params"] = params_json(p);
    j["probability"] = herald::herald_probability(p);
    j["normalization_residual"] = std::abs(norm - 1.0);
    j["x_min"] = x_min;
    j["x_max"] = x_max;
    j["points"] = points;
    emit_sidecar(out, meta, j);
  }
};

struct NegativitySurfaceCmd {
  Squeezing sq;
  int n = 2;
  int phi_steps = 21;
  int t_steps = 21;
  double tol = 1e-6;
  std::string out;
  std::string meta;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("negativity-surface", "Wigner negativity over (phi, t)");
    sq.add(cmd);
    cmd->add_option("--n", n)->capture_default_str();
    cmd->add_option("--phi-steps", phi_steps)->capture_default_str();
    cmd->add_option("--t-steps", t_steps)->capture_default_str();
    cmd->add_option("--tol", tol, "absolute tolerance of each negativity")->capture_default_str();
    cmd->add_option("--out", out, "CSV path, '-' for stdout");
    cmd->add_option("--meta", meta, "JSON sidecar path (default <out>.json)");
    cmd->callback([this] { run(); });
  }

  void run() {
    const double r = sq.value();
    const auto s = herald::negativity_surface(n, r, phi_steps, t_steps, tol);
    emit(out, render(s.table()));
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
    Json j;
    j["n"] = n;
    j["r"] = r;
    j["r_db"] = herald::nepers_to_db(r);
    j["phi_steps"] = phi_steps;
    j["t_steps"] = t_steps;
    j["tol"] = tol;
    j["warnings"] = s.warnings;
    emit_sidecar(out, meta, j);
  }
};

struct EntanglementCmd {
  Squeezing sq;
  int resolution = 101;
  std::string out;
  std::string boundary_out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("entanglement", "entanglement degree over (phi, t) and its boundary");
    sq.add(cmd);
    cmd->add_option("--resolution", resolution, "samples per axis")->capture_default_str();
    cmd->add_option("--out", out, "degree CSV path, '-' for stdout");
    cmd->add_option("--boundary-out", boundary_out,
                    "boundary CSV path (default <out stem>_boundary.csv)");
    cmd->callback([this] { run(); });
  }

  void run() {
    const auto m = herald::entanglement_map(sq.value(), resolution);
    const std::string degree = render(m.table());
    const std::string boundary = render(m.boundary_table());
    if (out.empty() || out == "-") {
      if (boundary_out.empty()) {
        std::cout << degree << "\n" << boundary;
        return;
      }
      std::cout << degree;
      emit(boundary_out, boundary);
      return;
    }
    herald::write_text(out, degree);
    std::string path = boundary_out;
    if (path.empty()) {
      path = out;
      if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0) path.resize(path.size() - 4);
      path += "_boundary.csv";
    }
    emit(path, boundary);
  }
};

struct WignerCmd {
  std::string params;
  std::string bounds = "6";
  std::string resolution = "201";
  std::string out;
  std::string meta;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("wigner", "Wigner function of the heralded state on a grid");
    cmd->add_option("--params", params, "r=..,phi=..,t=..,n=.. (r_db may replace r)")->required();
    cmd->add_option("--bounds", bounds, "L for [-L, L]^2, or xmin,xmax,pmin,pmax")->capture_default_str();
    cmd->add_option("--resolution", resolution, "N, or nx,np")->capture_default_str();
    cmd->add_option("--out", out, "CSV path, '-' for stdout");
    cmd->add_option("--meta", meta, "JSON sidecar path (default <out>.json)");
    cmd->callback([this] { run(); });
  }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) parts.push_back(item);
    return parts;
  }

  void run() {
    const SchemeParams p = parse_params(params);
    herald::GridSpec spec;
    const auto b = split(bounds);
    if (b.size() == 1) {
      const double L = parse_number(b[0], "--bounds");
      spec.x_min = spec.p_min = -L;
      spec.x_max = spec.p_max = L;
    } else if (b.size() == 4) {
      spec.x_min = parse_number(b[0], "--bounds");
      spec.x_max = parse_number(b[1], "--bounds");
      spec.p_min = parse_number(b[2], "--bounds");
      spec.p_max = parse_number(b[3], "--bounds");
    } else {
      throw UsageError("--bounds: expected L or xmin,xmax,pmin,pmax");
    }
    const auto res = split(resolution);
    if (res.size() == 1) {
      spec.nx = spec.np = parse_int(res[0], "--resolution");
    } else if (res.size() == 2) {
      spec.nx = parse_int(res[0], "--resolution");
      spec.np = parse_int(res[1], "--resolution");
    } else {
      throw UsageError("--resolution: expected N or nx,np");
    }
    const auto grid = herald::wigner_grid(p, spec);
    emit(out, render(herald::wigner_table(grid)));
    for (const auto& w : grid.warnings) std::cerr << "warning: " << w << "\n";
    Json j;
    j["params"] = params_json(p);
    j["x_min"] = spec.x_min;
    j["x_max"] = spec.x_max;
    j["p_min"] = spec.p_min;
    j["p_max"] = spec.p_max;
    j["nx"] = spec.nx;
    j["np"] = spec.np;
    j["grid_normalization"] = grid.normalization;
    j["grid_negativity"] = grid.negativity();
    j["warnings"] = grid.warnings;
    emit_sidecar(out, meta, j);
  }
};

struct FidelityCmd {
  std::string target;
  std::string params;
  bool optimize = false;
  std::string out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("fidelity", "fidelity and probability against a cat target");
    cmd->add_option("--target", target, "cat (odd, alpha 2) or scat (odd, alpha 1/2, R 1)")
        ->required()
        ->check(CLI::IsMember({"cat", "scat"}));
    auto* a = cmd->add_option("--params", params, "r=..,phi=..,t=..,n=..");
    auto* b = cmd->add_flag("--optimize", optimize, "closed-form optimum plus a maximizer check");
    a->excludes(b);
    cmd->add_option("--out", out, "JSON path, '-' for stdout");
    cmd->callback([this] { run(); });
  }

  void run() {
    const bool cat = target == "cat";
    const auto objective = cat ? herald::Objective::fidelity_cat : herald::Objective::fidelity_scat;
    Json j;
    j["target"] = target;
    if (optimize) {
      const auto best = cat ? herald::best_probability_cat() : herald::best_probability_scat();
      const double t = cat ? herald::optimal_t_cat(best.r) : herald::optimal_t_scat(best.r);
      const SchemeParams p{best.r, pi, t, 1};
      j["F"] = cat ? herald::fidelity_cat_closed(p.r, p.t, p.phi)
                   : herald::fidelity_scat_closed(p.r, p.t, p.phi);
      j["P"] = best.probability;
      j["params"] = params_json(p);

      herald::SearchSpace space;
      space.r = {best.r, best.r};
      const auto found = herald::maximize(objective, space);
      Json m;
      m["F"] = found.value;
      m["P"] = herald::herald_probability(found.params);
      m["params"] = params_json(found.params);
      m["evaluations"] = found.evaluations;
      m["agrees"] = std::abs(found.params.t - t) < 1e-3 && std::abs(found.params.phi - pi) < 1e-3 &&
                    std::abs(found.value - j["F"].get<double>()) < 1e-6;
      j["maximizer"] = m;
    } else {
      if (params.empty()) throw UsageError("fidelity: one of --params or --optimize is required");
      const SchemeParams p = parse_params(params);
      herald::validate(p);
      j["F"] = herald::evaluate_objective(objective, p, 1e-7);
      j["P"] = herald::herald_probability(p);
      j["params"] = params_json(p);
      if (p.n == 1) {
        const auto ts = cat ? herald::TargetState::cat(2.0, herald::Parity::odd)
                            : herald::TargetState::squeezed_cat(0.5, 1.0, herald::Parity::odd);
        j["F_numeric"] = herald::fidelity_numeric(p, ts);
      }
    }
    emit(out, dump(j));
  }
};

struct VerifyCmd {
  std::string grid_spec = "5x5x5";
  int cutoff = 60;
  int n_max = 4;
  double tol = 1e-6;
  double fidelity_tol = 1e-6;
  double probability_tol = 1e-7;
  double completeness_tol = 1e-6;
  std::string out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("verify", "closed forms against the truncated Fock-basis simulation");
    cmd->add_option("--grid-spec", grid_spec, "r x phi x t steps, e.g. 5x5x5")->capture_default_str();
    cmd->add_option("--cutoff", cutoff, "minimum Fock cutoff (raised where the squeezing needs it)")
        ->capture_default_str();
    cmd->add_option("--n-max", n_max)->capture_default_str();
    cmd->add_option("--tol", tol, "negativity tolerance at the Fock point")->capture_default_str();
    cmd->add_option("--fidelity-tol", fidelity_tol, "allowed 1 - F over the sweep")->capture_default_str();
    cmd->add_option("--probability-tol", probability_tol)->capture_default_str();
    cmd->add_option("--completeness-tol", completeness_tol, "allowed |sum_n P(n) - 1|")
        ->capture_default_str();
    cmd->add_option("--out", out, "JSON path, '-' for stdout");
    cmd->callback([this] { run(); });
  }

  void run() {
    herald::OracleSweepSpec spec;
    std::vector<int> steps;
    std::stringstream in(grid_spec);
    std::string item;
    while (std::getline(in, item, 'x')) steps.push_back(parse_int(item, "--grid-spec"));
    if (steps.size() != 3) throw UsageError("--grid-spec: expected RxPxT, e.g. 5x5x5");
    spec.r_steps = steps[0];
    spec.phi_steps = steps[1];
    spec.t_steps = steps[2];
    spec.n_max = n_max;
    spec.min_cutoff = cutoff;
    require(tol > 0.0, "tol must be positive");
    require(fidelity_tol >= 0.0 && probability_tol >= 0.0 && completeness_tol >= 0.0,
            "sweep tolerances must be >= 0");

    const auto sweep = herald::oracle_sweep(spec);
    bool ok = true;
    Json s;
    s["points"] = sweep.points;
    s["skipped_impossible"] = sweep.skipped_impossible;
    s["min_fidelity"] = sweep.min_fidelity;
    s["max_probability_error"] = sweep.max_probability_error;
    s["max_completeness_error"] = sweep.max_completeness_error;
    s["max_oracle_completeness_error"] = sweep.max_oracle_completeness_error;
    const bool sweep_ok = sweep.min_fidelity >= 1.0 - fidelity_tol &&
                          sweep.max_probability_error <= probability_tol &&
                          sweep.max_completeness_error <= completeness_tol &&
                          sweep.max_oracle_completeness_error <= completeness_tol;
    s["pass"] = sweep_ok;
    ok = ok && sweep_ok;

    // Orthogonal phase, balanced splitter, 8 dB: the heralded state is |n>.
    Json fock = Json::array();
    for (int n = 1; n <= 3; ++n) {
      const SchemeParams p{herald::db_to_nepers(8.0), pi, 1.0 / std::sqrt(2.0), n};
      const double fidelity = herald::fidelity_numeric(p, herald::TargetState::fock(n));
      const double closed = herald::wigner_negativity(p, tol);
      const auto sim = herald::simulate_scheme(p, std::max(cutoff, herald::recommended_cutoff(p.r)));
      const double oracle = herald::fock_negativity(sim.herald.state, tol).negativity;
      const bool pass = fidelity >= 1.0 - 1e-8 && std::abs(closed - oracle) <= 2.0 * tol;
      Json f;
      f["n"] = n;
      f["fidelity"] = fidelity;
      f["negativity"] = closed;
      f["oracle_negativity"] = oracle;
      f["pass"] = pass;
      fock.push_back(f);
      ok = ok && pass;
    }

    Json j;
    j["sweep"] = s;
    j["fock_point"] = fock;
    j["pass"] = ok;
    emit(out, dump(j));
    if (!ok) throw VerificationFailure("verification failed");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heralded non-Gaussian states from two squeezed vacua"};
  app.set_config("--config", "", "read flags from a TOML/INI file, one [subcommand] section each");
  app.require_subcommand(1);

  WavefunctionCmd wavefunction;
  NegativitySurfaceCmd surface;
  EntanglementCmd entanglement;
  WignerCmd wigner;
  FidelityCmd fidelity;
  VerifyCmd verify;
  wavefunction.add(app);
  surface.add(app);
  entanglement.add(app);
  wigner.add(app);
  fidelity.add(app);
  verify.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
