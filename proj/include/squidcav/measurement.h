#pragma once

// Ideal projective readout of the charge qubit and post-selection of the
// cavity field.

#include <optional>

#include "squidcav/analytic.h"
#include "squidcav/hilbert.h"

namespace squidcav::measurement {

// Outcomes below this probability are treated as impossible.
inline constexpr double kNullProbability = 1e-14;

struct MeasurementRecord {
  Qubit outcome = Qubit::g;
  double probability = 0.0;
  hilbert::CavityState post_state;
  std::optional<analytic::BranchDecomposition> analytic_post;
};

MeasurementRecord measure_qubit(const hilbert::JointState& state, Qubit outcome);

// Probabilities from closed-form label overlaps; the post-selected cavity
// state is materialized at `fock_dim` (auto-chosen when absent).
MeasurementRecord measure_qubit(const analytic::BranchDecomposition& state,
                                Qubit outcome,
                                std::optional<int> fock_dim = std::nullopt);

// <x|y> for two cavity labels. Coherent pairs use the Gaussian closed form,
// anything involving a squeezed label is evaluated in Fock space.
Complex label_overlap(const analytic::CavityLabel& x,
                      const analytic::CavityLabel& y);

struct ParityWeights {
  double even = 0.0;
  double odd = 0.0;
};

ParityWeights parity_spectrum(const hilbert::CavityState& state);

}  // namespace squidcav::measurement
