#pragma once

// Closed-form evolutions of the qubit-cavity system and the tools to turn
// them into Fock-space vectors. Every evolution here has a numeric twin in
// experiments::verify_analytic_numeric.
//
// Branch convention: sigma_x |+-> = +-|+->, |g> = (|+> + |->)/sqrt 2, and the
// "+" cavity label is the one that evolves under the +sigma_x coupling.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "squidcav/hilbert.h"
#include "squidcav/model.h"

namespace squidcav::analytic {

// Factors of exp[theta (b1 a + b2 a^+a + b3 a^+)]
//   = exp(f1 a^+) exp(f2 a^+a) exp(f3 a) exp(f4).
struct DisentangledFactors {
  Complex f1, f2, f3, f4;
};

// Below this |b2 theta| the factors are evaluated from their Taylor series.
inline constexpr double kSeriesSwitch = 1e-6;

DisentangledFactors disentangle(Complex theta, Complex beta1, Complex beta2,
                                Complex beta3);

// Applies the ordered product exp(f1 a^+) exp(f2 a^+a) exp(f3 a) exp(f4) to a
// Fock vector. Exact in the truncated space except for weight pushed past the
// top level by exp(f1 a^+).
Vector apply_disentangled(const DisentangledFactors& f, const Vector& psi);

// e^{i phase} |alpha>
struct CoherentLabel {
  Complex alpha;
  double phase = 0.0;

  friend bool operator==(const CoherentLabel&, const CoherentLabel&) = default;
};

// e^{i phase} exp(-i rotation a^+a) S(squeeze) |gamma>, with
// S(z) = exp[(z* a^2 - z a^+2)/2] and |gamma> coherent.
struct SqueezedLabel {
  Complex gamma;
  Complex squeeze;
  double rotation = 0.0;
  double phase = 0.0;

  friend bool operator==(const SqueezedLabel&, const SqueezedLabel&) = default;
};

using CavityLabel = std::variant<CoherentLabel, SqueezedLabel>;

enum class QubitBasis { g, e, plus, minus };

std::string_view to_string(QubitBasis q);
QubitBasis qubit_basis_from_string(std::string_view name);

struct Branch {
  QubitBasis qubit = QubitBasis::g;
  Complex weight;
  CavityLabel label;

  friend bool operator==(const Branch&, const Branch&) = default;
};

struct BranchDecomposition {
  std::vector<Branch> branches;
  std::string dropped_global_phase;
  std::optional<Complex> rabi_frequency;  // Omega = xi* E_J / hbar, rad/s

  friend bool operator==(const BranchDecomposition&,
                         const BranchDecomposition&) = default;
};

// Rewrites |+-> branches in the g/e basis and merges branches that share a
// qubit state and an identical label. Exactly cancelled branches are removed.
BranchDecomposition to_ge_basis(const BranchDecomposition& state);
BranchDecomposition simplify(const BranchDecomposition& state);

// Smallest Fock dimension keeping the label's truncation tail below 1e-10.
int required_dim(const CavityLabel& label);
int required_dim(const BranchDecomposition& state);

// Fock vector of a label; throws TruncationError if fock_dim is too small.
hilbert::CavityState materialize(const CavityLabel& label, int fock_dim);

// Joint Fock vector. Without an explicit dimension, starts at 64 and doubles
// (up to 512) until every label fits.
hilbert::JointState materialize(const BranchDecomposition& state,
                                std::optional<int> fock_dim = std::nullopt);

// <x|y> = exp(-|x|^2/2 - |y|^2/2 + x* y).
Complex coherent_overlap(Complex x, Complex y);
// Overlap including the labels' phases.
Complex coherent_overlap(const CoherentLabel& x, const CoherentLabel& y);

// Closed form exp{-4 kappa^2 [1 - cos w] - 2i kappa alpha' sin w} for real
// kappa and alpha'. In this library's branch labelling it equals
// <alpha_-|alpha_+>; with the two labels swapped it reads <alpha_+|alpha_->.
Complex injected_overlap_closed_form(double kappa, double alpha_prime,
                                     double omega_tau);

// Complex Rabi frequency xi* E_J / hbar.
Complex rabi_frequency(const model::DeviceParams& p, const model::Coupling& c);
// kappa = xi* E_J / (hbar omega).
Complex kappa(const model::DeviceParams& p, const model::Coupling& c);

// Cat amplitude alpha(tau) = kappa (e^{-i omega tau} - 1).
Complex cat_amplitude(const model::DeviceParams& p, const model::Coupling& c,
                      double tau);

// Preparation step from |0>|g> at n_g = 1/2, Phi_c = Phi_0/2.
BranchDecomposition evolve_vacuum(const model::DeviceParams& p,
                                  const model::Coupling& c, double tau);

struct InjectedBranches {
  Complex alpha_plus;
  Complex alpha_minus;
  double phi = 0.0;
};

// alpha_+- = alpha' e^{-i w} -+ kappa (1 - e^{-i w}),
// phi = Im[alpha'* kappa (1 - e^{i w})], w = omega tau.
InjectedBranches injected_branches(Complex kappa, Complex alpha_prime,
                                   double omega_tau);

// Same setting as evolve_vacuum with a coherent field |alpha'> injected.
BranchDecomposition evolve_coherent(const model::DeviceParams& p,
                                    const model::Coupling& c,
                                    Complex alpha_prime, double tau);

enum class Parity { even, odd };

// 1/sqrt(2 +- 2 e^{-2|alpha|^2}).
double cat_normalization(Complex alpha, Parity parity);
hilbert::CavityState cat_state(Complex alpha, Parity parity, int fock_dim);

// hbar pi / (4 E_J), seconds.
double pulse_duration(const model::DeviceParams& p);

// Qubit rotation exp(-i (pi/4) sigma_x) at Phi_c = Phi_0 (coupling off); the
// cavity labels rotate freely by omega * pulse_duration.
BranchDecomposition flux_pi_pulse(const BranchDecomposition& state,
                                  const model::DeviceParams& p);

// theta = E_J (1 + |xi|^2 / 2), rad/s.
double squeeze_branch_frequency(const model::DeviceParams& p,
                                const model::Coupling& c);

// Second-order (H2) evolution of |gamma>|g> at n_g = 1/2, Phi_c = 0, with the
// product form U = exp(-i w_s t a^+a) S(-i s xi*^2 E_J t) for the
// sigma_x = s branch, w_s = omega - s |xi|^2 E_J.
BranchDecomposition squeezed_evolution(const model::DeviceParams& p,
                                       const model::Coupling& c, Complex gamma,
                                       double t);

}  // namespace squidcav::analytic
