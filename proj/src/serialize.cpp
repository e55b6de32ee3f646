#include "squidcav/serialize.h"

#include <cmath>
#include <set>

#include "squidcav/errors.h"

namespace squidcav::serialize {

using analytic::BranchDecomposition;
using analytic::CoherentLabel;
using analytic::SqueezedLabel;

namespace {

double finite_or_throw(const json& j, const std::string& key) {
  if (!j.is_number()) throw PreconditionError("'" + key + "' must be a number");
  return j.get<double>();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw PreconditionError(std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw PreconditionError(std::string("'") + key + "' must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const analytic::CavityLabel& label) {
  if (const auto* c = std::get_if<CoherentLabel>(&label)) {
    return {{"kind", "coherent"}, {"alpha", complex_to_json(c->alpha)}, {"phase", c->phase}};
  }
  const auto& s = std::get<SqueezedLabel>(label);
  return {{"kind", "squeezed"},
          {"gamma", complex_to_json(s.gamma)},
          {"squeeze", complex_to_json(s.squeeze)},
          {"rotation", s.rotation},
          {"phase", s.phase}};
}

analytic::CavityLabel label_from_json(const json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "coherent") {
    return CoherentLabel{complex_from_json(require(j, "alpha"), "alpha"),
                         require(j, "phase").get<double>()};
  }
  if (kind == "squeezed") {
    return SqueezedLabel{complex_from_json(require(j, "gamma"), "gamma"),
                         complex_from_json(require(j, "squeeze"), "squeeze"),
                         require(j, "rotation").get<double>(),
                         require(j, "phase").get<double>()};
  }
  throw PreconditionError("unknown label kind '" + kind + "'");
}

json to_json(const BranchDecomposition& state) {
  json branches = json::array();
  for (const auto& b : state.branches) {
    branches.push_back({{"qubit", std::string(analytic::to_string(b.qubit))},
                        {"weight", complex_to_json(b.weight)},
                        {"label", to_json(b.label)}});
  }
  json out = {{"branches", branches}, {"dropped_global_phase", state.dropped_global_phase}};
  if (state.rabi_frequency) out["rabi_frequency"] = complex_to_json(*state.rabi_frequency);
  return out;
}

BranchDecomposition branches_from_json(const json& j) {
  BranchDecomposition out;
  for (const json& b : require(j, "branches")) {
    out.branches.push_back({analytic::qubit_basis_from_string(require(b, "qubit").get<std::string>()),
                            complex_from_json(require(b, "weight"), "weight"),
                            label_from_json(require(b, "label"))});
  }
  out.dropped_global_phase = require(j, "dropped_global_phase").get<std::string>();
  if (j.contains("rabi_frequency")) {
    out.rabi_frequency = complex_from_json(j.at("rabi_frequency"), "rabi_frequency");
  }
  return out;
}

json to_json(const hilbert::CavityState& state) {
  json amps = json::array();
  for (Eigen::Index n = 0; n < state.amplitudes().size(); ++n) {
    amps.push_back(complex_to_json(state.amplitudes()[n]));
  }
  return {{"fock_amplitudes", amps}, {"leakage", state.leakage()}};
}

hilbert::CavityState cavity_from_json(const json& j) {
  const json& amps = require(j, "fock_amplitudes");
  Vector v(amps.size());
  for (std::size_t n = 0; n < amps.size(); ++n) {
    v[static_cast<Eigen::Index>(n)] = complex_from_json(amps[n], "fock_amplitudes");
  }
  return hilbert::CavityState(std::move(v), j.value("leakage", 0.0));
}

json to_json(const measurement::MeasurementRecord& record) {
  json out = {{"outcome", record.outcome == Qubit::g ? "g" : "e"},
              {"probability", record.probability},
              {"post_state", to_json(record.post_state)}};
  out["analytic_post"] = record.analytic_post ? to_json(*record.analytic_post) : json(nullptr);
  return out;
}

measurement::MeasurementRecord record_from_json(const json& j) {
  const std::string outcome = require(j, "outcome").get<std::string>();
  if (outcome != "g" && outcome != "e") {
    throw PreconditionError("measurement outcome must be 'g' or 'e'");
  }
  measurement::MeasurementRecord r{outcome == "g" ? Qubit::g : Qubit::e,
                                   require(j, "probability").get<double>(),
                                   cavity_from_json(require(j, "post_state")),
                                   std::nullopt};
  if (j.contains("analytic_post") && !j.at("analytic_post").is_null()) {
    r.analytic_post = branches_from_json(j.at("analytic_post"));
  }
  return r;
}

json to_json(const experiments::FeasibilityReport& r) {
  return {{"t_q_s", number_or_null(r.t_q)},
          {"t_d_s", number_or_null(r.t_d)},
          {"two_pi_t_d_s", number_or_null(2.0 * 3.14159265358979323846 * r.t_d)},
          {"T1_s", r.T1},
          {"T2_s", r.T2},
          {"tau_m_s", r.tau_m},
          {"operation_within_coherence", r.operation_within_coherence},
          {"readout_within_lifetimes", r.readout_within_lifetimes}};
}

json to_json(const std::vector<experiments::SweepRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"lambda_m", r.lambda_m},
                   {"cavity_kind", std::string(model::to_string(r.cavity_kind))},
                   {"ratio", r.ratio},
                   {"xi_abs", r.xi_abs},
                   {"rabi_hz", r.rabi_hz}});
  }
  return arr;
}

json to_json(const model::DeviceParams& p) {
  json out = {{"E_J_eV", p.josephson_ev},
              {"E_ch_eV", p.charging_ev},
              {"n_g", p.gate_charge},
              {"phi_c_ratio", p.flux_ratio},
              {"lambda_m", p.wavelength_m},
              {"cavity_kind", std::string(model::to_string(p.cavity_kind))},
              {"S_m2", p.squid_area_m2},
              {"z0_m", p.position()},
              {"xi_phase", p.xi_phase}};
  if (p.quality_factor) out["Q"] = *p.quality_factor;
  if (p.omega_override) out["omega_rad_s"] = *p.omega_override;
  return out;
}

model::DeviceParams device_from_json(const json& j, double default_flux_ratio) {
  if (!j.is_object()) throw PreconditionError("'device' must be an object");
  static const std::set<std::string> known = {"E_J_eV", "E_ch_eV", "n_g", "phi_c_ratio",
                                              "lambda_m", "cavity_kind", "S_m2", "z0_m",
                                              "Q", "omega_rad_s", "xi_phase"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw PreconditionError("unknown device key '" + key + "'");
  }
  model::DeviceParams p;
  p.josephson_ev = finite_or_throw(require(j, "E_J_eV"), "E_J_eV");
  p.charging_ev = finite_or_throw(require(j, "E_ch_eV"), "E_ch_eV");
  p.wavelength_m = finite_or_throw(require(j, "lambda_m"), "lambda_m");
  p.squid_area_m2 = finite_or_throw(require(j, "S_m2"), "S_m2");
  p.gate_charge = j.contains("n_g") ? finite_or_throw(j.at("n_g"), "n_g") : 0.5;
  p.flux_ratio = j.contains("phi_c_ratio") ? finite_or_throw(j.at("phi_c_ratio"), "phi_c_ratio")
                                           : default_flux_ratio;
  if (j.contains("cavity_kind")) {
    p.cavity_kind = model::cavity_kind_from_string(j.at("cavity_kind").get<std::string>());
  }
  if (j.contains("z0_m")) p.position_m = finite_or_throw(j.at("z0_m"), "z0_m");
  if (j.contains("Q")) p.quality_factor = finite_or_throw(j.at("Q"), "Q");
  if (j.contains("omega_rad_s")) p.omega_override = finite_or_throw(j.at("omega_rad_s"), "omega_rad_s");
  if (j.contains("xi_phase")) p.xi_phase = finite_or_throw(j.at("xi_phase"), "xi_phase");
  p.validate();
  return p;
}

}  // namespace squidcav::serialize
