#pragma once

// Truncated Fock-space linear algebra for one qubit coupled to one cavity mode.
//
// Joint vectors are laid out as (qubit g, Fock 0..N-1) followed by
// (qubit e, Fock 0..N-1). Energies are angular frequencies (hbar = 1), so a
// propagator exp(-iHt) takes t in seconds when H is in rad/s, or a
// dimensionless product when H is scaled.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace squidcav {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Qubit { g, e };

namespace hilbert {

inline constexpr int kDefaultFockDim = 64;
inline constexpr int kMaxFockDim = 512;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kLeakageThreshold = 1e-8;
// Tail weight a label may lose to truncation before the dimension is grown.
inline constexpr double kTruncationTail = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;

class FockOperator {
 public:
  // General (not necessarily hermitian) operator.
  static FockOperator general(Matrix entries);
  // Throws NonHermitian unless max|H - H^+| <= 1e-12 max|H|; the stored
  // matrix is then exactly symmetrized.
  static FockOperator hamiltonian(Matrix entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }
  bool is_hamiltonian() const noexcept { return hamiltonian_; }

 private:
  FockOperator(Matrix entries, bool hamiltonian);

  Matrix entries_;
  bool hamiltonian_ = false;
};

struct LadderOps {
  FockOperator a;
  FockOperator adag;
};

LadderOps make_ladder_ops(int fock_dim);

// Raw truncated annihilation matrix, a(n-1, n) = sqrt(n).
Matrix annihilation(int fock_dim);

double max_hermitian_defect(const Matrix& m);

class CavityState {
 public:
  // Throws NotNormalized unless the norm is 1 within 1e-10.
  explicit CavityState(Vector amplitudes, double leakage = 0.0);
  // Rescales to unit norm; throws NullOutcome for a zero vector.
  static CavityState normalized(Vector amplitudes, double leakage = 0.0);

  int fock_dim() const noexcept { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const noexcept { return amps_; }
  double leakage() const noexcept { return leakage_; }

  // Zero-padded (or truncated, if the dropped tail is below 1e-10) copy.
  CavityState resized(int fock_dim) const;

 private:
  Vector amps_;
  double leakage_;
};

class JointState {
 public:
  JointState(int fock_dim, Vector amplitudes, double leakage = 0.0,
             double leakage_threshold = kLeakageThreshold);

  static JointState product(Qubit q, const CavityState& cavity,
                            double leakage_threshold = kLeakageThreshold);

  int fock_dim() const noexcept { return fock_dim_; }
  const Vector& amplitudes() const noexcept { return amps_; }
  double leakage() const noexcept { return leakage_; }
  double leakage_threshold() const noexcept { return threshold_; }
  bool valid() const noexcept { return leakage_ < threshold_; }

  // Unnormalized cavity amplitudes conditioned on the qubit basis state.
  Vector block(Qubit q) const;

 private:
  int fock_dim_;
  Vector amps_;
  double leakage_;
  double threshold_;
};

// Population in the top `levels` Fock levels of each qubit block.
double top_population(const Vector& amplitudes, int fock_dim, int levels = 4);

// exp(-iHt) by eigendecomposition of the hermitian H, cached so a time grid
// costs one diagonalization.
class Propagator {
 public:
  explicit Propagator(const FockOperator& h);

  int dim() const noexcept { return static_cast<int>(eigenvalues_.size()); }
  Matrix unitary(double t) const;
  Vector apply(const Vector& psi, double t) const;
  JointState apply(const JointState& psi, double t) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

JointState propagate(const FockOperator& h, const JointState& psi0, double t);

// |<x|y>|^2, insensitive to global phase.
double fidelity(const JointState& x, const JointState& y);
double fidelity(const CavityState& x, const CavityState& y);

// Poisson weight of |alpha> beyond Fock level fock_dim - 1.
double coherent_tail(Complex alpha, int fock_dim);
// Smallest dimension with coherent_tail below `tail`.
int required_coherent_dim(Complex alpha, double tail = kTruncationTail);

// Throws TruncationError when the tail exceeds 1e-10.
CavityState coherent_fock(Complex alpha, int fock_dim);

// Exact Fock matrix elements <m|D(beta)|n> for m < rows, n < cols.
Matrix displacement_matrix(Complex beta, int rows, int cols);

// W(beta) = (2/pi) <D(beta) P D^+(beta)> with P the photon parity.
std::vector<double> wigner(const CavityState& state,
                           std::span<const Complex> points);

double mean_photon_number(const CavityState& state);

// min over theta of Var[(a e^{-i theta} + a^+ e^{i theta})/sqrt 2]; the
// vacuum gives 1/2.
double min_quadrature_variance(const CavityState& state);

}  // namespace hilbert
}  // namespace squidcav
