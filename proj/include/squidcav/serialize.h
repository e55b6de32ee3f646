#pragma once

// JSON forms of the library's states and reports. Doubles are written with
// the shortest representation that round-trips exactly.

#include "json.hpp"

#include "squidcav/analytic.h"
#include "squidcav/experiments.h"
#include "squidcav/measurement.h"
#include "squidcav/model.h"

namespace squidcav::serialize {

using nlohmann::json;

json complex_to_json(Complex z);
Complex complex_from_json(const json& j, const char* key = "value");

json to_json(const analytic::CavityLabel& label);
analytic::CavityLabel label_from_json(const json& j);

json to_json(const analytic::BranchDecomposition& state);
analytic::BranchDecomposition branches_from_json(const json& j);

json to_json(const hilbert::CavityState& state);
hilbert::CavityState cavity_from_json(const json& j);

json to_json(const measurement::MeasurementRecord& record);
measurement::MeasurementRecord record_from_json(const json& j);

json to_json(const experiments::FeasibilityReport& report);
json to_json(const std::vector<experiments::SweepRow>& rows);

// Flat device keys: E_J_eV, E_ch_eV, n_g, phi_c_ratio, lambda_m, cavity_kind,
// S_m2, z0_m, Q, omega_rad_s, xi_phase. Unknown keys are rejected.
json to_json(const model::DeviceParams& p);
model::DeviceParams device_from_json(const json& j, double default_flux_ratio = 0.5);

}  // namespace squidcav::serialize
