#include "squidcav/analytic.h"

#include <cmath>
#include <sstream>

#include "squidcav/constants.h"
#include "squidcav/errors.h"

namespace squidcav::analytic {

using constants::pi;
using model::Coupling;
using model::DeviceParams;

namespace {

constexpr Complex kI{0.0, 1.0};

Complex complex_expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// (e^z - 1) / z
Complex phi1(Complex z) {
  if (std::abs(z) < kSeriesSwitch) return 1.0 + z / 2.0 + z * z / 6.0;
  return complex_expm1(z) / z;
}

// (e^z - 1 - z) / z^2
Complex phi2(Complex z) {
  if (std::abs(z) < kSeriesSwitch) return 0.5 + z / 6.0 + z * z / 24.0;
  if (std::abs(z) < 1.0) {
    Complex term = 0.5;
    Complex sum = term;
    for (int k = 1; k < 40; ++k) {
      term *= z / double(k + 2);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (complex_expm1(z) - z) / (z * z);
}

// exp(f X) psi for nilpotent truncated X, summed to exhaustion.
Vector exp_nilpotent(Complex f, const Matrix& x, const Vector& psi) {
  Vector term = psi;
  Vector acc = psi;
  for (int k = 1; k < psi.size(); ++k) {
    term = (f / double(k)) * (x * term);
    if (term.squaredNorm() == 0.0) break;
    acc += term;
  }
  return acc;
}

void require_preparation_setting(const DeviceParams& p, const char* what) {
  if (p.gate_charge != 0.5 || p.flux_ratio != 0.5) {
    throw PreconditionError(std::string(what) +
                            " requires n_g = 1/2 and phi_c_ratio = 1/2");
  }
}

std::string format_phase(const char* form, Complex exponent) {
  std::ostringstream os;
  os.precision(17);
  os << form << " = exp(" << exponent.real() << " + " << exponent.imag() << "i)";
  return os.str();
}

// Unnormalized Fock amplitudes of S(z) D(gamma)|0> (standard convention).
std::vector<Complex> squeezed_coherent_amplitudes(Complex gamma, Complex z,
                                                  int count) {
  std::vector<Complex> c(count);
  const double r = std::abs(z);
  const Complex e_theta = r > 0.0 ? z / r : Complex(1.0);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double th = std::tanh(r);
  // S D(gamma) S^+ = D(gamma'); the state is D(gamma') S |0>, an eigenvector of
  // a cosh r + a^+ e^{i theta} sinh r with eigenvalue gamma.
  const Complex shifted = gamma * ch - std::conj(gamma) * e_theta * sh;
  c[0] = std::exp(-0.5 * std::norm(shifted) -
                  0.5 * std::conj(shifted) * std::conj(shifted) * e_theta * th) /
         std::sqrt(ch);
  if (count > 1) c[1] = gamma * c[0] / ch;
  for (int n = 1; n + 1 < count; ++n) {
    c[n + 1] = (gamma * c[n] - e_theta * sh * std::sqrt(double(n)) * c[n - 1]) /
               (ch * std::sqrt(n + 1.0));
  }
  return c;
}

// Weight beyond index `from` of a squeezed label, with the extent of the
// computed support doubling until the tail has converged.
double squeezed_tail(const SqueezedLabel& label, int from) {
  int extent = std::max(2 * from, 64);
  double previous = -1.0;
  while (extent <= 8192) {
    const auto c = squeezed_coherent_amplitudes(label.gamma, label.squeeze, extent);
    double tail = 0.0;
    for (int n = from; n < extent; ++n) tail += std::norm(c[n]);
    double edge = 0.0;
    for (int n = extent - 8; n < extent; ++n) edge += std::norm(c[n]);
    if (edge < 1e-30 || (previous >= 0.0 && std::abs(tail - previous) < 1e-20)) {
      return tail;
    }
    previous = tail;
    extent *= 2;
  }
  return previous;
}

bool same_label(const CavityLabel& x, const CavityLabel& y) { return x == y; }

Qubit to_qubit(QubitBasis q) {
  if (q == QubitBasis::g) return Qubit::g;
  if (q == QubitBasis::e) return Qubit::e;
  throw PreconditionError("branch not in the g/e basis");
}

}  // namespace

// ---------------------------------------------------------------------------

DisentangledFactors disentangle(Complex theta, Complex beta1, Complex beta2,
                                Complex beta3) {
  const Complex x = beta2 * theta;
  const Complex p1 = phi1(x);
  return {beta3 * theta * p1, x, beta1 * theta * p1,
          beta1 * beta3 * theta * theta * phi2(x)};
}

Vector apply_disentangled(const DisentangledFactors& f, const Vector& psi) {
  const int n = static_cast<int>(psi.size());
  const Matrix a = hilbert::annihilation(n);
  Vector out = exp_nilpotent(f.f3, a, psi);
  for (int k = 0; k < n; ++k) out[k] *= std::exp(f.f2 * double(k));
  out = exp_nilpotent(f.f1, a.adjoint(), out);
  return std::exp(f.f4) * out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(QubitBasis q) {
  switch (q) {
    case QubitBasis::g: return "g";
    case QubitBasis::e: return "e";
    case QubitBasis::plus: return "+";
    case QubitBasis::minus: return "-";
  }
  return "g";
}

QubitBasis qubit_basis_from_string(std::string_view name) {
  if (name == "g") return QubitBasis::g;
  if (name == "e") return QubitBasis::e;
  if (name == "+") return QubitBasis::plus;
  if (name == "-") return QubitBasis::minus;
  throw PreconditionError("unknown qubit basis state '" + std::string(name) + "'");
}

BranchDecomposition simplify(const BranchDecomposition& state) {
  BranchDecomposition out{{}, state.dropped_global_phase, state.rabi_frequency};
  for (const Branch& b : state.branches) {
    bool merged = false;
    for (Branch& existing : out.branches) {
      if (existing.qubit == b.qubit && same_label(existing.label, b.label)) {
        existing.weight += b.weight;
        merged = true;
        break;
      }
    }
    if (!merged) out.branches.push_back(b);
  }
  std::erase_if(out.branches, [](const Branch& b) { return b.weight == 0.0; });
  return out;
}

BranchDecomposition to_ge_basis(const BranchDecomposition& state) {
  BranchDecomposition out{{}, state.dropped_global_phase, state.rabi_frequency};
  const double h = 1.0 / std::sqrt(2.0);
  for (const Branch& b : state.branches) {
    switch (b.qubit) {
      case QubitBasis::g:
      case QubitBasis::e:
        out.branches.push_back(b);
        break;
      case QubitBasis::plus:
        out.branches.push_back({QubitBasis::g, h * b.weight, b.label});
        out.branches.push_back({QubitBasis::e, h * b.weight, b.label});
        break;
      case QubitBasis::minus:
        out.branches.push_back({QubitBasis::g, h * b.weight, b.label});
        out.branches.push_back({QubitBasis::e, -h * b.weight, b.label});
        break;
    }
  }
  return simplify(out);
}

// ---------------------------------------------------------------------------

int required_dim(const CavityLabel& label) {
  if (const auto* coh = std::get_if<CoherentLabel>(&label)) {
    return hilbert::required_coherent_dim(coh->alpha);
  }
  const auto& sq = std::get<SqueezedLabel>(label);
  int n = 2;
  while (squeezed_tail(sq, n) >= hilbert::kTruncationTail) {
    n = n < 64 ? n + 1 : n + n / 8;
  }
  return n;
}

int required_dim(const BranchDecomposition& state) {
  int n = 2;
  for (const Branch& b : state.branches) n = std::max(n, required_dim(b.label));
  return n;
}

hilbert::CavityState materialize(const CavityLabel& label, int fock_dim) {
  if (const auto* coh = std::get_if<CoherentLabel>(&label)) {
    hilbert::CavityState base = hilbert::coherent_fock(coh->alpha, fock_dim);
    return hilbert::CavityState(std::polar(1.0, coh->phase) * base.amplitudes(),
                                base.leakage());
  }
  const auto& sq = std::get<SqueezedLabel>(label);
  if (fock_dim < 2) throw InvalidDimension("Fock dimension must be >= 2");
  const double tail = squeezed_tail(sq, fock_dim);
  if (tail >= hilbert::kTruncationTail) {
    const int need = required_dim(label);
    throw TruncationError("squeezed label needs Fock dimension >= " +
                              std::to_string(need) + ", got " +
                              std::to_string(fock_dim),
                          need);
  }
  const auto c = squeezed_coherent_amplitudes(sq.gamma, sq.squeeze, fock_dim);
  Vector amps(fock_dim);
  for (int n = 0; n < fock_dim; ++n) {
    amps[n] = std::polar(1.0, sq.phase - sq.rotation * n) * c[n];
  }
  return hilbert::CavityState::normalized(std::move(amps), tail);
}

hilbert::JointState materialize(const BranchDecomposition& state,
                                std::optional<int> fock_dim) {
  const BranchDecomposition ge = to_ge_basis(state);
  int n = 0;
  if (fock_dim) {
    n = *fock_dim;
  } else {
    const int need = required_dim(ge);
    n = hilbert::kDefaultFockDim;
    while (n < need && n < hilbert::kMaxFockDim) n *= 2;
    if (n < need) {
      throw TruncationError("branch labels need Fock dimension " +
                                std::to_string(need) + " > " +
                                std::to_string(hilbert::kMaxFockDim),
                            need);
    }
  }
  Vector amps = Vector::Zero(2 * n);
  double leakage = 0.0;
  for (const Branch& b : ge.branches) {
    const hilbert::CavityState cav = materialize(b.label, n);
    const int offset = to_qubit(b.qubit) == Qubit::g ? 0 : n;
    amps.segment(offset, n) += b.weight * cav.amplitudes();
    leakage = std::max(leakage, cav.leakage());
  }
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    throw NotNormalized("branch decomposition materializes with norm " +
                        std::to_string(norm));
  }
  amps /= norm;
  return hilbert::JointState(n, std::move(amps), leakage);
}

// ---------------------------------------------------------------------------

Complex coherent_overlap(Complex x, Complex y) {
  return std::exp(-0.5 * std::norm(x) - 0.5 * std::norm(y) + std::conj(x) * y);
}

Complex coherent_overlap(const CoherentLabel& x, const CoherentLabel& y) {
  return std::polar(1.0, y.phase - x.phase) * coherent_overlap(x.alpha, y.alpha);
}

Complex injected_overlap_closed_form(double kappa, double alpha_prime,
                                     double omega_tau) {
  return std::exp(Complex(-4.0 * kappa * kappa * (1.0 - std::cos(omega_tau)),
                          -2.0 * kappa * alpha_prime * std::sin(omega_tau)));
}

Complex rabi_frequency(const DeviceParams& p, const Coupling& c) {
  return std::conj(c.xi) * p.josephson_rate();
}

Complex kappa(const DeviceParams& p, const Coupling& c) {
  return rabi_frequency(p, c) / p.omega();
}

Complex cat_amplitude(const DeviceParams& p, const Coupling& c, double tau) {
  return kappa(p, c) * (std::polar(1.0, -p.omega() * tau) - 1.0);
}

BranchDecomposition evolve_vacuum(const DeviceParams& p, const Coupling& c,
                                  double tau) {
  require_preparation_setting(p, "evolve_vacuum");
  const Complex alpha = cat_amplitude(p, c, tau);
  const Complex k = kappa(p, c);
  const double wt = p.omega() * tau;
  BranchDecomposition out;
  out.branches = {
      {QubitBasis::g, 0.5, CoherentLabel{alpha}},
      {QubitBasis::g, 0.5, CoherentLabel{-alpha}},
      {QubitBasis::e, 0.5, CoherentLabel{alpha}},
      {QubitBasis::e, -0.5, CoherentLabel{-alpha}},
  };
  out.dropped_global_phase = format_phase(
      "exp[-i kappa^2 sin(omega tau) + i kappa^2 omega tau]",
      kI * k * k * (wt - std::sin(wt)));
  out.rabi_frequency = rabi_frequency(p, c);
  return simplify(out);
}

InjectedBranches injected_branches(Complex kappa, Complex alpha_prime,
                                   double omega_tau) {
  const Complex rot = std::polar(1.0, -omega_tau);
  const Complex shift = kappa * (1.0 - rot);
  const double phi =
      (std::conj(alpha_prime) * kappa * (1.0 - std::polar(1.0, omega_tau))).imag();
  return {alpha_prime * rot - shift, alpha_prime * rot + shift, phi};
}

BranchDecomposition evolve_coherent(const DeviceParams& p, const Coupling& c,
                                    Complex alpha_prime, double tau) {
  require_preparation_setting(p, "evolve_coherent");
  const Complex k = kappa(p, c);
  const double wt = p.omega() * tau;
  const InjectedBranches inj = injected_branches(k, alpha_prime, wt);

  const CoherentLabel plus{inj.alpha_plus, inj.phi};
  const CoherentLabel minus{inj.alpha_minus, -inj.phi};
  if (k.imag() == 0.0 && alpha_prime.imag() == 0.0) {
    const Complex general = coherent_overlap(inj.alpha_minus, inj.alpha_plus);
    const Complex closed = injected_overlap_closed_form(k.real(), alpha_prime.real(), wt);
    if (std::abs(general - closed) > 1e-10 * std::max(1.0, std::abs(general))) {
      throw NumericalError("branch overlap disagrees with its closed form");
    }
  }

  BranchDecomposition out;
  out.branches = {
      {QubitBasis::g, 0.5, plus},
      {QubitBasis::g, 0.5, minus},
      {QubitBasis::e, 0.5, plus},
      {QubitBasis::e, -0.5, minus},
  };
  out.dropped_global_phase = format_phase(
      "exp[-i kappa^2 sin(omega tau) + i kappa^2 omega tau]",
      kI * k * k * (wt - std::sin(wt)));
  out.rabi_frequency = rabi_frequency(p, c);
  return simplify(out);
}

double cat_normalization(Complex alpha, Parity parity) {
  const double overlap = std::exp(-2.0 * std::norm(alpha));
  if (parity == Parity::odd) {
    if (std::abs(alpha) == 0.0) {
      throw NullOutcome("odd cat state at alpha = 0 is the null vector");
    }
    return 1.0 / std::sqrt(2.0 - 2.0 * overlap);
  }
  return 1.0 / std::sqrt(2.0 + 2.0 * overlap);
}

hilbert::CavityState cat_state(Complex alpha, Parity parity, int fock_dim) {
  const double norm = cat_normalization(alpha, parity);
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  const hilbert::CavityState plus = hilbert::coherent_fock(alpha, fock_dim);
  const hilbert::CavityState minus = hilbert::coherent_fock(-alpha, fock_dim);
  return hilbert::CavityState::normalized(
      norm * (plus.amplitudes() + sign * minus.amplitudes()), plus.leakage());
}

// ---------------------------------------------------------------------------

double pulse_duration(const DeviceParams& p) {
  return pi / (4.0 * p.josephson_rate());
}

BranchDecomposition flux_pi_pulse(const BranchDecomposition& state,
                                  const DeviceParams& p) {
  if (p.gate_charge != 0.5) {
    throw PreconditionError("flux pulse requires n_g = 1/2 (pure sigma_x generator)");
  }
  const double duration = pulse_duration(p);
  const double free_phase = p.omega() * duration;
  const Complex rot = std::polar(1.0, -free_phase);
  const double h = 1.0 / std::sqrt(2.0);

  BranchDecomposition out{{}, state.dropped_global_phase, state.rabi_frequency};
  for (const Branch& b : state.branches) {
    const Qubit q = to_qubit(b.qubit);
    CavityLabel label = b.label;
    if (auto* coh = std::get_if<CoherentLabel>(&label)) {
      coh->alpha *= rot;
    } else {
      std::get<SqueezedLabel>(label).rotation += free_phase;
    }
    // exp(-i pi/4 sigma_x) = (I - i sigma_x)/sqrt 2
    const QubitBasis same = b.qubit;
    const QubitBasis flipped = q == Qubit::g ? QubitBasis::e : QubitBasis::g;
    out.branches.push_back({same, h * b.weight, label});
    out.branches.push_back({flipped, Complex(0.0, -h) * b.weight, label});
  }
  std::ostringstream note;
  note.precision(17);
  note << "; flux pulse: duration " << duration << " s, cavity free rotation "
       << free_phase << " rad applied to labels";
  out.dropped_global_phase += note.str();
  return simplify(out);
}

// ---------------------------------------------------------------------------

double squeeze_branch_frequency(const DeviceParams& p, const Coupling& c) {
  return p.josephson_rate() * (1.0 + 0.5 * std::norm(c.xi));
}

BranchDecomposition squeezed_evolution(const DeviceParams& p, const Coupling& c,
                                       Complex gamma, double t) {
  if (p.gate_charge != 0.5 || p.flux_ratio != 0.0) {
    throw PreconditionError("squeezed_evolution requires n_g = 1/2 and phi_c_ratio = 0");
  }
  const int n_typ = static_cast<int>(std::ceil(std::norm(gamma)));
  const double margin = model::validity_margin(c, n_typ);
  if (model::expansion_unsafe(margin)) {
    throw PreconditionError("second-order expansion unsafe: validity margin " +
                            std::to_string(margin));
  }
  const double ej = p.josephson_rate();
  const double xi2 = std::norm(c.xi);
  const Complex xs2 = std::conj(c.xi) * std::conj(c.xi);
  const double theta = squeeze_branch_frequency(p, c);

  const SqueezedLabel plus{gamma, -kI * xs2 * ej * t, (p.omega() - xi2 * ej) * t,
                           theta * t};
  const SqueezedLabel minus{gamma, kI * xs2 * ej * t, (p.omega() + xi2 * ej) * t,
                            -theta * t};
  BranchDecomposition out;
  out.branches = {
      {QubitBasis::g, 0.5, plus},
      {QubitBasis::g, 0.5, minus},
      {QubitBasis::e, 0.5, plus},
      {QubitBasis::e, -0.5, minus},
  };
  out.dropped_global_phase = "none (branch phases exp(+-i theta t) kept in labels)";
  out.rabi_frequency = rabi_frequency(p, c);
  return simplify(out);
}

}  // namespace squidcav::analytic
