#include "squidcav/measurement.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "squidcav/errors.h"

namespace squidcav::measurement {

using analytic::BranchDecomposition;
using analytic::CavityLabel;
using analytic::CoherentLabel;
using analytic::QubitBasis;

namespace {

QubitBasis basis_of(Qubit q) { return q == Qubit::g ? QubitBasis::g : QubitBasis::e; }

std::string name_of(Qubit q) { return q == Qubit::g ? "g" : "e"; }

double block_weight(const BranchDecomposition& ge, QubitBasis q) {
  Complex total = 0.0;
  for (const auto& bi : ge.branches) {
    if (bi.qubit != q) continue;
    for (const auto& bj : ge.branches) {
      if (bj.qubit != q) continue;
      total += std::conj(bi.weight) * bj.weight * label_overlap(bi.label, bj.label);
    }
  }
  return total.real();
}

}  // namespace

Complex label_overlap(const CavityLabel& x, const CavityLabel& y) {
  const auto* cx = std::get_if<CoherentLabel>(&x);
  const auto* cy = std::get_if<CoherentLabel>(&y);
  if (cx && cy) return analytic::coherent_overlap(*cx, *cy);
  const int n = std::max({analytic::required_dim(x), analytic::required_dim(y),
                          hilbert::kDefaultFockDim});
  return analytic::materialize(x, n).amplitudes().dot(
      analytic::materialize(y, n).amplitudes());
}

MeasurementRecord measure_qubit(const hilbert::JointState& state, Qubit outcome) {
  const Vector block = state.block(outcome);
  const double total = state.amplitudes().squaredNorm();
  const double probability = block.squaredNorm() / total;
  if (probability < kNullProbability) {
    throw NullOutcome("outcome " + name_of(outcome) + " has probability " +
                      std::to_string(probability));
  }
  return {outcome, probability,
          hilbert::CavityState::normalized(block, state.leakage()), std::nullopt};
}

MeasurementRecord measure_qubit(const BranchDecomposition& state, Qubit outcome,
                                std::optional<int> fock_dim) {
  const BranchDecomposition ge = analytic::to_ge_basis(state);
  const double pg = block_weight(ge, QubitBasis::g);
  const double pe = block_weight(ge, QubitBasis::e);
  const double total = pg + pe;
  if (std::abs(total - 1.0) > hilbert::kNormTolerance) {
    throw NotNormalized("branch decomposition has norm^2 " + std::to_string(total));
  }
  const double probability = (outcome == Qubit::g ? pg : pe) / total;
  if (probability < kNullProbability) {
    throw NullOutcome("outcome " + name_of(outcome) + " has probability " +
                      std::to_string(probability));
  }

  BranchDecomposition post{{}, ge.dropped_global_phase, ge.rabi_frequency};
  const double scale = 1.0 / std::sqrt(probability * total);
  for (const auto& b : ge.branches) {
    if (b.qubit == basis_of(outcome)) post.branches.push_back({b.qubit, scale * b.weight, b.label});
  }

  int n = fock_dim.value_or(0);
  if (!fock_dim) {
    const int need = analytic::required_dim(post);
    n = hilbert::kDefaultFockDim;
    while (n < need && n < hilbert::kMaxFockDim) n *= 2;
  }
  Vector amps = Vector::Zero(n);
  double leakage = 0.0;
  for (const auto& b : post.branches) {
    const hilbert::CavityState cav = analytic::materialize(b.label, n);
    amps += b.weight * cav.amplitudes();
    leakage = std::max(leakage, cav.leakage());
  }
  return {outcome, probability,
          hilbert::CavityState::normalized(std::move(amps), leakage), std::move(post)};
}

ParityWeights parity_spectrum(const hilbert::CavityState& state) {
  const Vector& c = state.amplitudes();
  double even = 0.0;
  double odd = 0.0;
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    (n % 2 == 0 ? even : odd) += std::norm(c[n]);
  }
  const double total = even + odd;
  return {even / total, odd / total};
}

}  // namespace squidcav::measurement
