#include "herald/fock_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <string>

#include <Eigen/Dense>

#include "herald/quadrature.hpp"

namespace herald {

double FockVector::norm2() const {
  double total = 0.0;
  for (const complex& c : amplitudes) total += std::norm(c);
  return total;
}

double TwoModeFockVector::norm2() const {
  double total = 0.0;
  for (const complex& c : amplitudes) total += std::norm(c);
  return total;
}

int recommended_cutoff(double r) {
  int cutoff = std::max(60, static_cast<int>(std::ceil(10.0 * std::exp(2 * r))));
  if (cutoff % 2 != 0) ++cutoff;
  return cutoff;
}

FockVector squeezed_vacuum_fock(double r, double phi, int cutoff, double max_loss) {
  if (cutoff < 2) throw std::invalid_argument("squeezed_vacuum_fock: cutoff must be >= 2");
  if (!(r >= 0.0)) throw std::invalid_argument("squeezed_vacuum_fock: r must be >= 0");
  const complex ratio = -std::polar(std::tanh(r), phi);
  FockVector v;
  v.amplitudes.assign(static_cast<std::size_t>(cutoff) + 1, 0.0);
  complex c = 1.0 / std::sqrt(std::cosh(r));
  double kept = 0.0;
  for (int m = 0; 2 * m <= cutoff; ++m) {
    if (m > 0) c *= ratio * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
    v.amplitudes[2 * m] = c;
    kept += std::norm(c);
  }
  v.truncation_loss = std::max(0.0, 1.0 - kept);
  if (v.truncation_loss > max_loss) {
    // Walk the same recursion further to find where the tail drops below max_loss.
    int needed = cutoff;
    double total = kept;
    complex tail = c;
    for (int m = cutoff / 2 + 1; 1.0 - total > max_loss && m < 100000; ++m) {
      tail *= ratio * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
      total += std::norm(tail);
      needed = 2 * m;
    }
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "squeezed_vacuum_fock: truncation loss %.3g at cutoff %d exceeds %.3g; "
                  "cutoff %d required",
                  v.truncation_loss, cutoff, max_loss, needed);
    throw std::runtime_error(msg);
  }
  return v;
}

namespace {

// Within the block of N photons (basis |n1, N - n1>) the splitter is
// exp(-theta A), A = a1^dag a2 - a2^dag a1, cos theta = t. Conjugating by
// diag(i^n1) turns A into -i S with S real symmetric tridiagonal,
// S_{n1+1,n1} = sqrt((n1 + 1)(N - n1)), whose spectrum is N, N-2, ..., -N.
// Repeated creation-operator recursions lose all accuracy in large blocks,
// so the block unitary is applied through this eigenbasis instead.
struct BlockBasis {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
};

const BlockBasis& block_basis(int block) {
  static std::mutex mutex;
  static std::map<int, BlockBasis> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(block);
  if (it != cache.end()) return it->second;
  BlockBasis basis;
  if (block == 0) {
    basis.vectors = Eigen::MatrixXd::Ones(1, 1);
    basis.values = Eigen::VectorXd::Zero(1);
  } else {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(block + 1);
    Eigen::VectorXd sub(block);
    for (int k = 0; k < block; ++k) sub[k] = std::sqrt((k + 1.0) * (block - k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    basis.vectors = solver.eigenvectors();
    basis.values = solver.eigenvalues().array().round();
  }
  return cache.emplace(block, std::move(basis)).first->second;
}

complex i_power(int k) {
  static const std::array<complex, 4> powers{complex(1, 0), complex(0, 1), complex(-1, 0),
                                             complex(0, -1)};
  return powers[((k % 4) + 4) % 4];
}

}  // namespace

TwoModeFockVector beam_splitter_apply(const FockVector& mode1, const FockVector& mode2,
                                      double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("beam_splitter_apply: t in [0,1]");
  const double theta = std::acos(t);
  const int c1 = mode1.cutoff();
  const int c2 = mode2.cutoff();
  TwoModeFockVector out;
  out.dim = c1 + c2 + 1;
  out.amplitudes.assign(static_cast<std::size_t>(out.dim) * out.dim, 0.0);

  std::vector<int> blocks(static_cast<std::size_t>(c1 + c2) + 1);
  for (int b = 0; b <= c1 + c2; ++b) blocks[b] = b;
  for (int b : blocks) block_basis(b);  // fill the cache before going parallel

  parallel_for(blocks.size(), [&](std::size_t idx) {
    const int block = blocks[idx];
    const int lo = std::max(0, block - c2);
    const int hi = std::min(c1, block);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(block + 1);
    bool empty = true;
    for (int j = lo; j <= hi; ++j) {
      v[j] = mode1.amplitudes[j] * mode2.amplitudes[block - j] * i_power(-j);
      empty = empty && v[j] == 0.0;
    }
    if (empty) return;
    const BlockBasis& basis = block_basis(block);
    Eigen::VectorXcd z = basis.vectors.transpose() * v;
    for (int m = 0; m <= block; ++m) z[m] *= std::polar(1.0, theta * basis.values[m]);
    const Eigen::VectorXcd w = basis.vectors * z;
    for (int n1 = 0; n1 <= block; ++n1) {
      out.amplitudes[static_cast<std::size_t>(n1) * out.dim + (block - n1)] =
          w[n1] * i_power(n1);
    }
  });
  return out;
}

HeraldedFockState project_pnrd(const TwoModeFockVector& state, int n) {
  if (n < 0) throw std::invalid_argument("project_pnrd: n must be >= 0");
  HeraldedFockState result;
  result.state.amplitudes.assign(static_cast<std::size_t>(state.dim), 0.0);
  if (n < state.dim) {
    for (int n2 = 0; n2 < state.dim; ++n2) {
      result.state.amplitudes[n2] = state(n, n2);
      result.probability += std::norm(state(n, n2));
    }
  }
  if (result.probability < 1e-14) {
    throw ImpossibleOutcome("impossible outcome: detector count " + std::to_string(n) +
                            " has probability below 1e-14");
  }
  const double scale = 1.0 / std::sqrt(result.probability);
  for (complex& c : result.state.amplitudes) c *= scale;
  return result;
}

OracleOutcome simulate_scheme(const SchemeParams& p, int cutoff) {
  validate(p);
  const int dim = cutoff > 0 ? cutoff : recommended_cutoff(p.r);
  const FockVector in1 = squeezed_vacuum_fock(p.r, 0.0, dim);
  const FockVector in2 = squeezed_vacuum_fock(p.r, p.phi, dim);
  const TwoModeFockVector mixed = beam_splitter_apply(in1, in2, p.t);

  OracleOutcome outcome;
  outcome.input_truncation_loss =
      1.0 - (1.0 - in1.truncation_loss) * (1.0 - in2.truncation_loss);
  outcome.outcome_probabilities.assign(static_cast<std::size_t>(mixed.dim), 0.0);
  for (int n1 = 0; n1 < mixed.dim; ++n1) {
    for (int n2 = 0; n2 < mixed.dim; ++n2) {
      outcome.outcome_probabilities[n1] += std::norm(mixed(n1, n2));
    }
  }
  outcome.herald = project_pnrd(mixed, p.n);
  return outcome;
}

namespace {

// Index one past the last amplitude that matters for evaluation. The dropped
// tail has norm below 1e-7, the level at which input truncation already
// leaves spurious high-photon content in heralded states.
int significant_length(const std::vector<complex>& amplitudes) {
  int length = static_cast<int>(amplitudes.size());
  double tail = 0.0;
  while (length > 1 && tail + std::norm(amplitudes[length - 1]) < 1e-14) {
    tail += std::norm(amplitudes[length - 1]);
    --length;
  }
  return length;
}

}  // namespace

complex fock_wavefunction(const FockVector& v, double x) {
  const int length = significant_length(v.amplitudes);
  double prev = 0.0;
  double curr = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
  complex sum = v.amplitudes[0] * curr;
  for (int k = 0; k + 1 < length; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * curr - std::sqrt(k / (k + 1.0)) * prev;
    prev = curr;
    curr = next;
    sum += v.amplitudes[k + 1] * curr;
  }
  return sum;
}

std::vector<complex> direct_projection_integral(const SchemeParams& p,
                                                std::span<const double> x_grid) {
  validate(p);
  const double rho = p.rho();
  const FockVector detector_state = [&] {
    FockVector f;
    f.amplitudes.assign(static_cast<std::size_t>(p.n) + 1, 0.0);
    f.amplitudes[p.n] = 1.0;
    return f;
  }();
  const double half_width = 10.0 + 2.0 * std::sqrt(2.0 * p.n + 1.0);
  std::vector<complex> samples(x_grid.size());
  parallel_for(x_grid.size(), [&](std::size_t i) {
    const double x = x_grid[i];
    samples[i] = integrate_line(
        [&](double x1) {
          return squeezed_vacuum_wavefunction(p.r, 0.0, p.t * x1 + rho * x) *
                 squeezed_vacuum_wavefunction(p.r, p.phi, -rho * x1 + p.t * x) *
                 fock_wavefunction(detector_state, x1);
        },
        half_width, 1e-14);
  });
  return samples;
}

namespace {

// W = sum_{m,n} c_m c_n^* W_mn with, for k = n - m >= 0,
//   W_{m,m+k} = (-1)^m e^{i k theta} u_m^{(k)} / pi,
//   u_m^{(k)} = sqrt(m! / (m+k)!) y^{k/2} e^{-y/2} L_m^{(k)}(y),  y = 2(x^2 + p^2).
// u is run forward in m with the normalized Laguerre recurrence; |u| <= 1 and
// the forward direction follows the growing solution below the turning point.
class LaguerreWigner {
 public:
  explicit LaguerreWigner(const std::vector<complex>& c) : length_(significant_length(c)) {
    root_.resize(2 * static_cast<std::size_t>(length_) + 2);
    for (std::size_t i = 0; i < root_.size(); ++i) root_[i] = std::sqrt(static_cast<double>(i));
    for (int k = 0; k < length_; ++k) {
      Diagonal d;
      d.k = k;
      d.log_norm = -0.5 * std::lgamma(k + 1.0);
      double weight = 0.0;
      for (int m = 0; m + k < length_; ++m) {
        const complex rho = c[m] * std::conj(c[m + k]) * (m % 2 == 0 ? 1.0 : -1.0);
        d.re.push_back(rho.real());
        d.im.push_back(rho.imag());
        weight += std::abs(rho);
      }
      // |u| <= 1 bounds the whole diagonal by its weight.
      if (weight > 1e-16) diagonals_.push_back(std::move(d));
    }
  }

  double operator()(double x, double p) const {
    const double y = 2.0 * (x * x + p * p);
    const double log_y = y > 0.0 ? std::log(y) : 0.0;
    const double theta = std::atan2(p, x);
    double w = 0.0;
    for (const Diagonal& d : diagonals_) {
      const int k = d.k;
      if (k > 0 && y == 0.0) continue;
      const double cos_k = std::cos(k * theta);
      const double sin_k = std::sin(k * theta);
      double u_prev = 0.0;
      double u = std::exp(0.5 * k * log_y - 0.5 * y + d.log_norm);
      double partial = 0.0;
      const int count = static_cast<int>(d.re.size());
      for (int m = 0; m < count; ++m) {
        partial += u * (d.re[m] * cos_k - d.im[m] * sin_k);
        const double next = ((2.0 * m + 1.0 + k - y) * u - root_[m] * root_[m + k] * u_prev) /
                            (root_[m + 1] * root_[m + 1 + k]);
        u_prev = u;
        u = next;
      }
      w += (k == 0 ? 1.0 : 2.0) * partial;
    }
    return w / pi;
  }

 private:
  struct Diagonal {
    int k = 0;
    double log_norm = 0.0;  // -log sqrt(k!)
    std::vector<double> re, im;  // (-1)^m c_m c_{m+k}^*
  };
  int length_;
  std::vector<double> root_;
  std::vector<Diagonal> diagonals_;
};

}  // namespace

double fock_wigner_at(const FockVector& v, double x, double p) {
  return LaguerreWigner(v.amplitudes)(x, p);
}

WignerGrid fock_wigner(const FockVector& v, const GridSpec& spec) {
  const LaguerreWigner w(v.amplitudes);
  return sample_wigner(w, spec);
}

NegativityResult fock_negativity(const FockVector& v, double tol) {
  const auto& c = v.amplitudes;
  const int length = significant_length(c);
  complex mean_a = 0.0;
  complex mean_a2 = 0.0;
  double number = 0.0;
  for (int k = 0; k < length; ++k) {
    number += k * std::norm(c[k]);
    if (k + 1 < length) mean_a += std::conj(c[k]) * c[k + 1] * std::sqrt(k + 1.0);
    if (k + 2 < length) {
      mean_a2 += std::conj(c[k]) * c[k + 2] * std::sqrt((k + 1.0) * (k + 2.0));
    }
  }
  const double x_mean = std::sqrt(2.0) * mean_a.real();
  const double p_mean = std::sqrt(2.0) * mean_a.imag();
  const double sxx = mean_a2.real() + number + 0.5 - x_mean * x_mean;
  const double spp = -mean_a2.real() + number + 0.5 - p_mean * p_mean;
  const double sxp = mean_a2.imag() - x_mean * p_mean;
  const PhaseSpaceFrame frame = PhaseSpaceFrame::from_covariance({sxx, sxp, sxp, spp});
  const double start = 6.0 / std::sqrt(2.0) + 2.0;
  const LaguerreWigner w(c);
  return adaptive_negativity([&](double x, double p) { return w(x + x_mean, p + p_mean); },
                             frame, start, tol);
}

OracleSweepReport oracle_sweep(const OracleSweepSpec& spec) {
  if (spec.r_steps < 1 || spec.phi_steps < 1 || spec.t_steps < 1 || spec.n_max < 0) {
    throw std::invalid_argument("oracle_sweep: steps must be >= 1 and n_max >= 0");
  }
  struct Cell {
    double r, phi, t;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < spec.r_steps; ++i) {
    const double r = spec.r_steps == 1
                         ? spec.r_min
                         : spec.r_min + (spec.r_max - spec.r_min) * i / (spec.r_steps - 1);
    for (int j = 0; j < spec.phi_steps; ++j) {
      for (int k = 0; k < spec.t_steps; ++k) {
        cells.push_back({r, pi * (j + 1) / spec.phi_steps,
                         static_cast<double>(k + 1) / (spec.t_steps + 1)});
      }
    }
  }

  std::vector<OracleSweepReport> partial(cells.size());
  parallel_for(cells.size(), [&](std::size_t idx) {
    const Cell& cell = cells[idx];
    OracleSweepReport& rep = partial[idx];
    const int cutoff = std::max(spec.min_cutoff, recommended_cutoff(cell.r));
    const FockVector in1 = squeezed_vacuum_fock(cell.r, 0.0, cutoff);
    const FockVector in2 = squeezed_vacuum_fock(cell.r, cell.phi, cutoff);
    const TwoModeFockVector mixed = beam_splitter_apply(in1, in2, cell.t);
    const double kept = (1.0 - in1.truncation_loss) * (1.0 - in2.truncation_loss);

    rep.max_oracle_completeness_error = std::abs(mixed.norm2() - kept);
    double closed_total = 0.0;
    for (int n = 0; n < mixed.dim; ++n) {
      closed_total += herald_probability({cell.r, cell.phi, cell.t, n});
    }
    rep.max_completeness_error = std::abs(closed_total - 1.0);

    for (int n = 0; n <= spec.n_max; ++n) {
      const SchemeParams p{cell.r, cell.phi, cell.t, n};
      const double closed_p = herald_probability(p);
      double oracle_p = 0.0;
      for (int n2 = 0; n2 < mixed.dim; ++n2) oracle_p += std::norm(mixed(n, n2));
      rep.max_probability_error =
          std::max(rep.max_probability_error, std::abs(closed_p - oracle_p));
      if (oracle_p < 1e-14) {
        ++rep.skipped_impossible;
        continue;
      }
      const HeraldedFockState herald = project_pnrd(mixed, n);
      const ClosedFormWavefunction psi = output_wavefunction(p);
      const double sigma = 1.0 / std::sqrt(-2.0 * psi.envelope_coeff.real());
      const complex overlap = integrate_line(
          [&](double x) { return std::conj(fock_wavefunction(herald.state, x)) * psi(x); },
          8.0 * sigma * std::sqrt(2.0 * n + 1.0), 1e-13);
      rep.min_fidelity = std::min(rep.min_fidelity, std::norm(overlap));
      ++rep.points;
    }
  });

  OracleSweepReport total;
  for (const OracleSweepReport& rep : partial) {
    total.points += rep.points;
    total.skipped_impossible += rep.skipped_impossible;
    total.min_fidelity = std::min(total.min_fidelity, rep.min_fidelity);
    total.max_probability_error = std::max(total.max_probability_error, rep.max_probability_error);
    total.max_completeness_error =
        std::max(total.max_completeness_error, rep.max_completeness_error);
    total.max_oracle_completeness_error =
        std::max(total.max_oracle_completeness_error, rep.max_oracle_completeness_error);
  }
  return total;
}

}  // namespace herald
