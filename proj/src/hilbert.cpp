#include "squidcav/hilbert.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "squidcav/constants.h"
#include "squidcav/errors.h"

namespace squidcav::hilbert {

namespace {

void require_dim(int fock_dim) {
  if (fock_dim < 2) {
    throw InvalidDimension("Fock dimension must be >= 2, got " +
                           std::to_string(fock_dim));
  }
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

FockOperator::FockOperator(Matrix entries, bool hamiltonian)
    : entries_(std::move(entries)), hamiltonian_(hamiltonian) {
  if (entries_.rows() != entries_.cols()) {
    throw InvalidDimension("operator matrix must be square");
  }
  require_dim(static_cast<int>(entries_.rows()));
}

FockOperator FockOperator::general(Matrix entries) {
  return FockOperator(std::move(entries), false);
}

FockOperator FockOperator::hamiltonian(Matrix entries) {
  const double defect = max_hermitian_defect(entries);
  const double scale = max_abs(entries);
  if (defect > kHermitianTolerance * scale) {
    throw NonHermitian("operator is not hermitian: max|H - H^+| = " +
                       std::to_string(defect) + " vs max|H| = " +
                       std::to_string(scale));
  }
  Matrix sym = 0.5 * (entries + entries.adjoint());
  return FockOperator(std::move(sym), true);
}

double max_hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidDimension("hermiticity check on non-square matrix");
  }
  return max_abs(m - m.adjoint());
}

Matrix annihilation(int fock_dim) {
  require_dim(fock_dim);
  Matrix a = Matrix::Zero(fock_dim, fock_dim);
  for (int n = 1; n < fock_dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

LadderOps make_ladder_ops(int fock_dim) {
  Matrix a = annihilation(fock_dim);
  Matrix adag = a.adjoint();
  return {FockOperator::general(std::move(a)),
          FockOperator::general(std::move(adag))};
}

// ---------------------------------------------------------------------------

CavityState::CavityState(Vector amplitudes, double leakage)
    : amps_(std::move(amplitudes)), leakage_(leakage) {
  if (amps_.size() < 2) throw InvalidDimension("cavity state needs dim >= 2");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw NotNormalized("cavity state norm " + std::to_string(norm) +
                        " differs from 1");
  }
}

CavityState CavityState::normalized(Vector amplitudes, double leakage) {
  const double norm = amplitudes.norm();
  if (norm == 0.0 || !std::isfinite(norm)) {
    throw NullOutcome("cannot normalize a null cavity vector");
  }
  amplitudes /= norm;
  return CavityState(std::move(amplitudes), leakage);
}

CavityState CavityState::resized(int fock_dim) const {
  require_dim(fock_dim);
  const int n = this->fock_dim();
  if (fock_dim >= n) {
    Vector out = Vector::Zero(fock_dim);
    out.head(n) = amps_;
    return CavityState(std::move(out), leakage_);
  }
  const double dropped = amps_.tail(n - fock_dim).squaredNorm();
  if (dropped > kTruncationTail) {
    throw TruncationError("truncating cavity state to " +
                              std::to_string(fock_dim) + " drops weight " +
                              std::to_string(dropped),
                          n);
  }
  return normalized(amps_.head(fock_dim), leakage_ + dropped);
}

// ---------------------------------------------------------------------------

JointState::JointState(int fock_dim, Vector amplitudes, double leakage,
                       double leakage_threshold)
    : fock_dim_(fock_dim),
      amps_(std::move(amplitudes)),
      leakage_(leakage),
      threshold_(leakage_threshold) {
  require_dim(fock_dim_);
  if (amps_.size() != 2 * fock_dim_) {
    throw DimensionMismatch("joint state needs 2*fock_dim amplitudes");
  }
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw NotNormalized("joint state norm " + std::to_string(norm) +
                        " differs from 1");
  }
}

JointState JointState::product(Qubit q, const CavityState& cavity,
                               double leakage_threshold) {
  const int n = cavity.fock_dim();
  Vector amps = Vector::Zero(2 * n);
  amps.segment(q == Qubit::g ? 0 : n, n) = cavity.amplitudes();
  return JointState(n, std::move(amps), cavity.leakage(), leakage_threshold);
}

Vector JointState::block(Qubit q) const {
  return amps_.segment(q == Qubit::g ? 0 : fock_dim_, fock_dim_);
}

double top_population(const Vector& amplitudes, int fock_dim, int levels) {
  levels = std::min(levels, fock_dim);
  double total = 0.0;
  for (Eigen::Index start = 0; start < amplitudes.size(); start += fock_dim) {
    total += amplitudes.segment(start + fock_dim - levels, levels).squaredNorm();
  }
  return total;
}

// ---------------------------------------------------------------------------

Propagator::Propagator(const FockOperator& h) {
  if (!h.is_hamiltonian()) {
    throw NonHermitian("propagate requires a hermitian-tagged operator");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the Hamiltonian failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Matrix Propagator::unitary(double t) const {
  Vector phases(eigenvalues_.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::polar(1.0, -eigenvalues_[k] * t);
  }
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Vector Propagator::apply(const Vector& psi, double t) const {
  if (psi.size() != eigenvalues_.size()) {
    throw DimensionMismatch("state dimension " + std::to_string(psi.size()) +
                            " does not match Hamiltonian dimension " +
                            std::to_string(eigenvalues_.size()));
  }
  Vector coeffs = eigenvectors_.adjoint() * psi;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::polar(1.0, -eigenvalues_[k] * t);
  }
  return eigenvectors_ * coeffs;
}

JointState Propagator::apply(const JointState& psi, double t) const {
  Vector out = apply(psi.amplitudes(), t);
  const double top = top_population(out, psi.fock_dim());
  return JointState(psi.fock_dim(), std::move(out),
                    std::max(psi.leakage(), top), psi.leakage_threshold());
}

JointState propagate(const FockOperator& h, const JointState& psi0, double t) {
  if (h.dim() != 2 * psi0.fock_dim()) {
    throw DimensionMismatch("Hamiltonian dimension " + std::to_string(h.dim()) +
                            " != 2 * fock_dim " +
                            std::to_string(psi0.fock_dim()));
  }
  return Propagator(h).apply(psi0, t);
}

double fidelity(const JointState& x, const JointState& y) {
  if (x.fock_dim() != y.fock_dim()) {
    throw DimensionMismatch("fidelity between states of different dimension");
  }
  return std::norm(x.amplitudes().dot(y.amplitudes()));
}

double fidelity(const CavityState& x, const CavityState& y) {
  if (x.fock_dim() != y.fock_dim()) {
    throw DimensionMismatch("fidelity between states of different dimension");
  }
  return std::norm(x.amplitudes().dot(y.amplitudes()));
}

// ---------------------------------------------------------------------------

double coherent_tail(Complex alpha, int fock_dim) {
  const double mu = std::norm(alpha);
  if (mu == 0.0) return fock_dim >= 1 ? 0.0 : 1.0;
  const double log_mu = std::log(mu);
  double tail = 0.0;
  for (int n = fock_dim;; ++n) {
    const double term = std::exp(-mu + n * log_mu - std::lgamma(n + 1.0));
    tail += term;
    if (n > mu && term <= 1e-20 * tail) break;
    if (n > mu && term < 1e-300) break;
  }
  return tail;
}

int required_coherent_dim(Complex alpha, double tail) {
  int n = 2;
  while (coherent_tail(alpha, n) >= tail) ++n;
  return n;
}

CavityState coherent_fock(Complex alpha, int fock_dim) {
  require_dim(fock_dim);
  const double tail = coherent_tail(alpha, fock_dim);
  if (tail >= kTruncationTail) {
    const int need = required_coherent_dim(alpha);
    throw TruncationError("coherent state |alpha|=" +
                              std::to_string(std::abs(alpha)) +
                              " needs Fock dimension >= " +
                              std::to_string(need) + ", got " +
                              std::to_string(fock_dim),
                          need);
  }
  Vector amps(fock_dim);
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < fock_dim; ++n) {
    amps[n] = amps[n - 1] * alpha / std::sqrt(double(n));
  }
  return CavityState::normalized(std::move(amps), tail);
}

Matrix displacement_matrix(Complex beta, int rows, int cols) {
  Matrix d = Matrix::Zero(rows, cols);
  const double x = std::norm(beta);
  if (x == 0.0) {
    for (int k = 0; k < std::min(rows, cols); ++k) d(k, k) = 1.0;
    return d;
  }
  const double log_r = 0.5 * std::log(x);
  const double arg = std::arg(beta);
  // <m|D|n> = sqrt(n!/m!) beta^{m-n} e^{-x/2} L_n^{(m-n)}(x), m >= n, and
  // <m|D|n> = sqrt(m!/n!) (-beta*)^{n-m} e^{-x/2} L_m^{(n-m)}(x), m < n.
  // Each fixed offset k = |m - n| runs the three-term Laguerre recurrence
  // along the diagonal.
  auto fill_diagonal = [&](int k, bool lower) {
    const int len = lower ? std::min(cols, rows - k) : std::min(rows, cols - k);
    double l_prev = 0.0;
    double l_cur = 1.0;  // L_0^{(k)}
    for (int j = 0; j < len; ++j) {
      if (j == 1) {
        l_prev = 1.0;
        l_cur = 1.0 + k - x;
      } else if (j > 1) {
        const double next =
            ((2.0 * (j - 1) + 1.0 + k - x) * l_cur - (j - 1 + k) * l_prev) / j;
        l_prev = l_cur;
        l_cur = next;
      }
      const double log_mag = 0.5 * (std::lgamma(j + 1.0) - std::lgamma(j + k + 1.0)) +
                             k * log_r - 0.5 * x;
      const double phase = lower ? k * arg : k * (arg + constants::pi);
      const Complex value = std::polar(std::exp(log_mag), lower ? phase : -phase) * l_cur;
      if (lower) {
        d(j + k, j) = value;
      } else {
        d(j, j + k) = value;
      }
    }
  };
  for (int k = 0; k < rows; ++k) fill_diagonal(k, true);
  for (int k = 1; k < cols; ++k) fill_diagonal(k, false);
  return d;
}

std::vector<double> wigner(const CavityState& state,
                           std::span<const Complex> points) {
  // Trim numerically empty top levels; the displaced vectors only need the
  // occupied support.
  const Vector& amps = state.amplitudes();
  int support = state.fock_dim();
  double dropped = 0.0;
  while (support > 2) {
    const double w = std::norm(amps[support - 1]);
    if (dropped + w > 1e-20) break;
    dropped += w;
    --support;
  }
  const Vector psi = amps.head(support);

  std::vector<double> out;
  out.reserve(points.size());
  for (const Complex& beta : points) {
    const double r = std::abs(beta);
    const int rows = support + 24 + static_cast<int>(std::ceil(4.0 * r * r + 12.0 * r));
    const Vector phi = displacement_matrix(-beta, rows, support) * psi;
    double parity = 0.0;
    for (int n = 0; n < rows; ++n) {
      parity += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(phi[n]);
    }
    out.push_back(2.0 / constants::pi * parity);
  }
  return out;
}

double mean_photon_number(const CavityState& state) {
  const Vector& c = state.amplitudes();
  double n_mean = 0.0;
  for (int n = 1; n < c.size(); ++n) n_mean += n * std::norm(c[n]);
  return n_mean;
}

double min_quadrature_variance(const CavityState& state) {
  const Vector& c = state.amplitudes();
  Complex a1 = 0.0;
  Complex a2 = 0.0;
  for (int n = 1; n < c.size(); ++n) {
    a1 += std::sqrt(double(n)) * std::conj(c[n - 1]) * c[n];
    if (n >= 2) a2 += std::sqrt(double(n) * (n - 1)) * std::conj(c[n - 2]) * c[n];
  }
  const double n_mean = mean_photon_number(state);
  return 0.5 + (n_mean - std::norm(a1)) - std::abs(a2 - a1 * a1);
}

}  // namespace squidcav::hilbert
