#pragma once

#include <cmath>

#include "squidcav/experiments.h"
#include "squidcav/model.h"

namespace fixtures {

inline constexpr double kPi = 3.14159265358979323846;

// lambda = 0.1 cm, E_ch = hbar omega / 4, E_J = E_ch / 4, n_g = 1/2,
// Phi_c = Phi_0 / 2.
inline squidcav::model::DeviceParams preparation_device() {
  return squidcav::experiments::fig1_device(1e-3, 4.0, squidcav::model::CavityKind::full);
}

inline squidcav::model::DeviceParams squeeze_device() {
  auto p = preparation_device();
  p.flux_ratio = 0.0;
  return p;
}

}  // namespace fixtures
