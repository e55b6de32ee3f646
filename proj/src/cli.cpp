#include "squidcav/cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "squidcav/analytic.h"
#include "squidcav/constants.h"
#include "squidcav/errors.h"
#include "squidcav/measurement.h"
#include "squidcav/serialize.h"

namespace squidcav::cli {

using nlohmann::json;

std::string_view to_string(ScenarioKind s) {
  switch (s) {
    case ScenarioKind::cat: return "cat";
    case ScenarioKind::inject: return "inject";
    case ScenarioKind::squeeze: return "squeeze";
    case ScenarioKind::sweep: return "sweep";
    case ScenarioKind::verify: return "verify";
    case ScenarioKind::feasibility: return "feasibility";
  }
  return "cat";
}

double TimeSpec::resolve(double omega) const {
  if (seconds) return *seconds;
  return *omega_units / omega;
}

namespace {

ScenarioKind scenario_kind(const std::string& name) {
  for (auto s : {ScenarioKind::cat, ScenarioKind::inject, ScenarioKind::squeeze,
                 ScenarioKind::sweep, ScenarioKind::verify, ScenarioKind::feasibility}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown scenario '" + name +
                    "' (expected cat, inject, squeeze, sweep, verify or feasibility)");
}

std::set<std::string> allowed_keys(ScenarioKind s) {
  std::set<std::string> keys = {"scenario", "output"};
  const std::set<std::string> state_keys = {"device", "coupling", "fock_dim"};
  switch (s) {
    case ScenarioKind::cat:
      keys.insert(state_keys.begin(), state_keys.end());
      keys.insert({"tau", "omega_tau", "wigner"});
      break;
    case ScenarioKind::inject:
      keys.insert(state_keys.begin(), state_keys.end());
      keys.insert({"alpha_prime", "tau", "omega_tau", "apply_pulse"});
      break;
    case ScenarioKind::squeeze:
      keys.insert(state_keys.begin(), state_keys.end());
      keys.insert({"gamma", "t", "omega_t"});
      break;
    case ScenarioKind::sweep:
      keys.insert({"lambda_min_m", "lambda_max_m", "points", "ratios", "kinds", "threads"});
      break;
    case ScenarioKind::verify:
      keys.insert(state_keys.begin(), state_keys.end());
      keys.insert({"kind", "points", "omega_t_max", "alpha_prime", "gamma"});
      break;
    case ScenarioKind::feasibility:
      keys.insert({"device", "T1", "T2", "tau_m"});
      break;
  }
  return keys;
}

double number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing key '" + key + "'");
  if (!j.at(key).is_number()) throw ConfigError("'" + key + "' must be a number");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ConfigError("'" + key + "' must be finite");
  return v;
}

Complex complex_key(const json& j, const std::string& key) {
  try {
    return serialize::complex_from_json(j.at(key), key.c_str());
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

TimeSpec time_key(const json& j, const std::string& seconds_key,
                  const std::string& omega_key) {
  const bool has_s = j.contains(seconds_key);
  const bool has_w = j.contains(omega_key);
  if (has_s == has_w) {
    throw ConfigError("exactly one of '" + seconds_key + "' or '" + omega_key +
                      "' is required");
  }
  TimeSpec t;
  if (has_s) {
    t.seconds = number(j, seconds_key);
    if (*t.seconds < 0.0) throw ConfigError("'" + seconds_key + "' must be >= 0");
  } else {
    t.omega_units = number(j, omega_key);
    if (*t.omega_units < 0.0) throw ConfigError("'" + omega_key + "' must be >= 0");
  }
  return t;
}

int positive_int(const json& j, const std::string& key, int minimum) {
  if (!j.at(key).is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  const int v = j.at(key).get<int>();
  if (v < minimum) {
    throw ConfigError("'" + key + "' must be >= " + std::to_string(minimum));
  }
  return v;
}

model::Coupling coupling_for(const RunConfig& config, const model::DeviceParams& p) {
  if (config.xi) return model::Coupling::from_xi(*config.xi);
  return model::coupling_xi(p);
}

json coupling_json(const model::Coupling& c) {
  return {{"xi", serialize::complex_to_json(c.xi)},
          {"xi_abs", std::abs(c.xi)},
          {"eta_abs_Wb", c.eta_abs},
          {"validity_margin_n0", model::validity_margin(c, 0)}};
}

json measurements_json(const analytic::BranchDecomposition& state,
                       std::optional<int> fock_dim,
                       std::vector<measurement::MeasurementRecord>* records) {
  json out = json::object();
  for (Qubit q : {Qubit::g, Qubit::e}) {
    const char* name = q == Qubit::g ? "g" : "e";
    try {
      auto record = measurement::measure_qubit(state, q, fock_dim);
      out[name] = serialize::to_json(record);
      if (records) records->push_back(std::move(record));
    } catch (const NullOutcome& e) {
      out[name] = nullptr;
      out[std::string(name) + "_note"] = e.what();
    }
  }
  return out;
}

void check_leakage(const hilbert::CavityState& s) {
  if (s.leakage() >= hilbert::kLeakageThreshold) {
    throw TruncationError("post-selected state leakage " + std::to_string(s.leakage()) +
                              " exceeds threshold",
                          -1);
  }
}

json wigner_json(const std::vector<measurement::MeasurementRecord>& records,
                 const WignerGrid& grid) {
  std::vector<double> axis(grid.points);
  for (int k = 0; k < grid.points; ++k) {
    axis[k] = -grid.extent + 2.0 * grid.extent * k / (grid.points - 1);
  }
  std::vector<Complex> points;
  points.reserve(axis.size() * axis.size());
  for (double im : axis) {
    for (double re : axis) points.emplace_back(re, im);
  }
  json out = {{"convention", "W(beta) = (2/pi) <D(beta) P D(beta)^+>, rows = Im(beta)"},
              {"axis", axis}};
  for (const auto& r : records) {
    const auto values = hilbert::wigner(r.post_state, points);
    json rows = json::array();
    for (int i = 0; i < grid.points; ++i) {
      rows.push_back(std::vector<double>(values.begin() + i * grid.points,
                                         values.begin() + (i + 1) * grid.points));
    }
    out[r.outcome == Qubit::g ? "g" : "e"] = rows;
  }
  return out;
}

json warnings_json(const model::DeviceParams& p, const model::Coupling& c, int n_max,
                   std::ostream& log) {
  json out = json::array();
  for (const auto& w : p.warnings()) out.push_back(w);
  const double margin = model::validity_margin(c, n_max);
  if (model::expansion_unsafe(margin)) {
    out.push_back("expansion unsafe: validity margin " + std::to_string(margin) +
                  " at n = " + std::to_string(n_max));
  }
  for (const auto& w : out) log << "warning: " << w.get<std::string>() << '\n';
  return out;
}

json run_cat(const RunConfig& config, std::ostream& log) {
  const model::DeviceParams& p = *config.device;
  const model::Coupling c = coupling_for(config, p);
  const double tau = config.time.resolve(p.omega());
  const auto state = analytic::evolve_vacuum(p, c, tau);
  const Complex alpha = analytic::cat_amplitude(p, c, tau);

  std::vector<measurement::MeasurementRecord> records;
  json measurements = measurements_json(state, config.fock_dim, &records);
  for (const auto& r : records) check_leakage(r.post_state);

  return {{"scenario", "cat"},
          {"device", serialize::to_json(p)},
          {"coupling", coupling_json(c)},
          {"tau_s", tau},
          {"omega_tau", p.omega() * tau},
          {"alpha", serialize::complex_to_json(alpha)},
          {"state", serialize::to_json(state)},
          {"measurements", measurements},
          {"wigner", wigner_json(records, config.wigner)},
          {"warnings", warnings_json(p, c, analytic::required_dim(state), log)}};
}

json run_inject(const RunConfig& config, std::ostream& log) {
  const model::DeviceParams& p = *config.device;
  const model::Coupling c = coupling_for(config, p);
  const double tau = config.time.resolve(p.omega());
  const auto state = analytic::evolve_coherent(p, c, config.alpha_prime, tau);
  const auto inj = analytic::injected_branches(analytic::kappa(p, c), config.alpha_prime,
                                               p.omega() * tau);
  std::vector<measurement::MeasurementRecord> records;
  json out = {{"scenario", "inject"},
              {"device", serialize::to_json(p)},
              {"coupling", coupling_json(c)},
              {"tau_s", tau},
              {"omega_tau", p.omega() * tau},
              {"alpha_prime", serialize::complex_to_json(config.alpha_prime)},
              {"alpha_plus", serialize::complex_to_json(inj.alpha_plus)},
              {"alpha_minus", serialize::complex_to_json(inj.alpha_minus)},
              {"phi", inj.phi},
              {"state", serialize::to_json(state)},
              {"measurements", measurements_json(state, config.fock_dim, &records)}};
  if (config.apply_pulse) {
    model::DeviceParams pulse_device = p;
    pulse_device.flux_ratio = 1.0;
    const auto pulsed = analytic::flux_pi_pulse(state, pulse_device);
    out["pulse"] = {{"duration_s", analytic::pulse_duration(pulse_device)},
                    {"state", serialize::to_json(pulsed)},
                    {"measurements", measurements_json(pulsed, config.fock_dim, &records)}};
  }
  for (const auto& r : records) check_leakage(r.post_state);
  out["warnings"] = warnings_json(p, c, analytic::required_dim(state), log);
  return out;
}

json run_squeeze(const RunConfig& config, std::ostream& log) {
  const model::DeviceParams& p = *config.device;
  const model::Coupling c = coupling_for(config, p);
  const double t = config.time.resolve(p.omega());
  const auto state = analytic::squeezed_evolution(p, c, config.gamma, t);
  const double r = std::norm(c.xi) * p.josephson_rate() * t;

  std::vector<measurement::MeasurementRecord> records;
  json measurements = measurements_json(state, config.fock_dim, &records);
  for (const auto& rec : records) check_leakage(rec.post_state);

  json labels = json::array();
  const int n = std::max(analytic::required_dim(state), hilbert::kDefaultFockDim);
  for (const auto& b : state.branches) {
    const auto cav = analytic::materialize(b.label, n);
    labels.push_back({{"qubit", std::string(analytic::to_string(b.qubit))},
                      {"min_quadrature_variance", hilbert::min_quadrature_variance(cav)}});
  }
  json post = json::object();
  for (const auto& rec : records) {
    post[rec.outcome == Qubit::g ? "g" : "e"] = hilbert::min_quadrature_variance(rec.post_state);
  }
  return {{"scenario", "squeeze"},
          {"device", serialize::to_json(p)},
          {"coupling", coupling_json(c)},
          {"t_s", t},
          {"gamma", serialize::complex_to_json(config.gamma)},
          {"state", serialize::to_json(state)},
          {"measurements", measurements},
          {"variance",
           {{"squeeze_r", r},
            {"expected_label_min_variance", 0.5 * std::exp(-2.0 * r)},
            {"vacuum_variance", 0.5},
            {"labels", labels},
            {"post_selected", post}}},
          {"warnings", warnings_json(p, c, static_cast<int>(std::ceil(std::norm(config.gamma))), log)}};
}

json run_verify(const RunConfig& config, std::ostream& log, bool& contract_ok) {
  const model::DeviceParams& p = *config.device;
  const model::Coupling c = coupling_for(config, p);
  experiments::VerifyRequest request;
  request.scenario = config.verify_kind;
  request.alpha_prime = config.alpha_prime;
  request.gamma = config.gamma;
  request.fock_dim = config.fock_dim;
  const double t_max = config.verify_omega_t_max / p.omega();
  for (int k = 0; k < config.verify_points; ++k) {
    request.times.push_back(config.verify_points == 1
                                ? t_max
                                : t_max * k / (config.verify_points - 1));
  }
  const auto result = experiments::verify_analytic_numeric(p, c, request);
  contract_ok = result.max_infidelity <= kVerifyContract;
  log << "verify " << experiments::to_string(config.verify_kind)
      << ": max infidelity " << result.max_infidelity << " at N = " << result.fock_dim
      << (contract_ok ? "" : " (exceeds contract)") << '\n';
  return {{"scenario", "verify"},
          {"kind", std::string(experiments::to_string(config.verify_kind))},
          {"device", serialize::to_json(p)},
          {"coupling", coupling_json(c)},
          {"fock_dim", result.fock_dim},
          {"times_s", request.times},
          {"infidelities", result.infidelities},
          {"max_infidelity", result.max_infidelity},
          {"contract", kVerifyContract},
          {"passed", contract_ok}};
}

json run_feasibility(const RunConfig& config) {
  const model::DeviceParams& p = *config.device;
  const auto report = experiments::feasibility_report(p, config.T1, config.T2, config.tau_m);
  json out = serialize::to_json(report);
  out["scenario"] = "feasibility";
  out["device"] = serialize::to_json(p);
  out["rabi_hz"] = experiments::rabi_frequency_hz(p, model::coupling_xi(p));
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output path '" + path.string() + "'");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  if (!j.contains("scenario") || !j.at("scenario").is_string()) {
    throw ConfigError("missing key 'scenario'");
  }
  RunConfig config;
  config.scenario = scenario_kind(j.at("scenario").get<std::string>());
  const auto allowed = allowed_keys(config.scenario);
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' for scenario '" +
                        std::string(to_string(config.scenario)) + "'");
    }
  }

  if (j.contains("output")) {
    const json& out = j.at("output");
    if (!out.is_object()) throw ConfigError("'output' must be an object");
    for (const auto& [key, value] : out.items()) {
      if (key != "path" && key != "format") throw ConfigError("unknown key 'output." + key + "'");
    }
    if (out.contains("path")) config.output_path = out.at("path").get<std::string>();
    if (out.contains("format")) {
      const auto f = out.at("format").get<std::string>();
      if (f == "csv") {
        config.format = Format::csv;
      } else if (f != "json") {
        throw ConfigError("'output.format' must be csv or json");
      }
    }
  }
  if (config.scenario == ScenarioKind::sweep && !(j.contains("output") && j.at("output").contains("format"))) {
    config.format = Format::csv;
  }
  if (config.format == Format::csv && config.scenario != ScenarioKind::sweep) {
    throw ConfigError("'output.format' csv is only available for the sweep scenario");
  }

  const bool squeeze_setting =
      config.scenario == ScenarioKind::squeeze ||
      (config.scenario == ScenarioKind::verify && j.value("kind", "") == "squeeze");
  if (config.scenario != ScenarioKind::sweep) {
    if (!j.contains("device")) throw ConfigError("missing key 'device'");
    try {
      config.device = serialize::device_from_json(j.at("device"), squeeze_setting ? 0.0 : 0.5);
    } catch (const PreconditionError& e) {
      throw ConfigError(std::string("device: ") + e.what());
    }
  }
  if (j.contains("coupling")) {
    const json& cj = j.at("coupling");
    if (!cj.is_object()) throw ConfigError("'coupling' must be an object");
    for (const auto& [key, value] : cj.items()) {
      if (key != "xi") throw ConfigError("unknown key 'coupling." + key + "'");
    }
    if (cj.contains("xi")) config.xi = complex_key(cj, "xi");
  }
  if (j.contains("fock_dim")) config.fock_dim = positive_int(j, "fock_dim", 2);
  if (j.contains("alpha_prime")) config.alpha_prime = complex_key(j, "alpha_prime");
  if (j.contains("gamma")) config.gamma = complex_key(j, "gamma");

  switch (config.scenario) {
    case ScenarioKind::cat:
      config.time = time_key(j, "tau", "omega_tau");
      if (j.contains("wigner")) {
        const json& w = j.at("wigner");
        for (const auto& [key, value] : w.items()) {
          if (key != "extent" && key != "points") throw ConfigError("unknown key 'wigner." + key + "'");
        }
        if (w.contains("extent")) config.wigner.extent = number(w, "extent");
        if (w.contains("points")) config.wigner.points = positive_int(w, "points", 2);
        if (!(config.wigner.extent > 0.0)) throw ConfigError("'wigner.extent' must be > 0");
      }
      break;
    case ScenarioKind::inject:
      if (!j.contains("alpha_prime")) throw ConfigError("missing key 'alpha_prime'");
      config.time = time_key(j, "tau", "omega_tau");
      if (j.contains("apply_pulse")) {
        if (!j.at("apply_pulse").is_boolean()) throw ConfigError("'apply_pulse' must be a boolean");
        config.apply_pulse = j.at("apply_pulse").get<bool>();
      }
      break;
    case ScenarioKind::squeeze:
      if (!j.contains("gamma")) throw ConfigError("missing key 'gamma'");
      config.time = time_key(j, "t", "omega_t");
      break;
    case ScenarioKind::sweep: {
      const double lo = j.contains("lambda_min_m") ? number(j, "lambda_min_m") : 0.1e-2;
      const double hi = j.contains("lambda_max_m") ? number(j, "lambda_max_m") : 15e-2;
      const int points = j.contains("points") ? positive_int(j, "points", 1) : 200;
      if (!(lo > 0.0) || hi < lo) throw ConfigError("'lambda_min_m'/'lambda_max_m' must satisfy 0 < min <= max");
      config.sweep.lambdas = experiments::log_grid(lo, hi, points);
      if (j.contains("ratios")) {
        config.sweep.ratios.clear();
        for (const auto& r : j.at("ratios")) {
          if (!r.is_number() || !(r.get<double>() > 0.0)) throw ConfigError("'ratios' must hold positive numbers");
          config.sweep.ratios.push_back(r.get<double>());
        }
        if (config.sweep.ratios.empty()) throw ConfigError("'ratios' must be nonempty");
      }
      if (j.contains("kinds")) {
        config.sweep.kinds.clear();
        for (const auto& k : j.at("kinds")) {
          try {
            config.sweep.kinds.push_back(model::cavity_kind_from_string(k.get<std::string>()));
          } catch (const PreconditionError& e) {
            throw ConfigError(std::string("kinds: ") + e.what());
          }
        }
        if (config.sweep.kinds.empty()) throw ConfigError("'kinds' must be nonempty");
      }
      config.sweep.threads = j.contains("threads")
                                 ? static_cast<unsigned>(positive_int(j, "threads", 1))
                                 : std::max(1u, std::thread::hardware_concurrency());
      break;
    }
    case ScenarioKind::verify:
      if (!j.contains("kind")) throw ConfigError("missing key 'kind'");
      try {
        config.verify_kind = experiments::scenario_from_string(j.at("kind").get<std::string>());
      } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
      }
      if (j.contains("points")) config.verify_points = positive_int(j, "points", 1);
      if (j.contains("omega_t_max")) {
        config.verify_omega_t_max = number(j, "omega_t_max");
        if (config.verify_omega_t_max < 0.0) throw ConfigError("'omega_t_max' must be >= 0");
      }
      break;
    case ScenarioKind::feasibility:
      config.T1 = number(j, "T1");
      config.T2 = number(j, "T2");
      config.tau_m = number(j, "tau_m");
      if (!(config.T1 > 0.0 && config.T2 > 0.0 && config.tau_m > 0.0)) {
        throw ConfigError("'T1', 'T2' and 'tau_m' must be > 0");
      }
      if (!config.device->quality_factor) throw ConfigError("missing key 'device.Q'");
      break;
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
}

std::string example_config(std::string_view scenario) {
  const std::string device = R"(  // Device keys (eV, m, rad/s). n_g and phi_c_ratio default to the
  // scenario's protocol setting; z0_m defaults to the cavity centre.
  "device": {
    "E_J_eV": 1.2996e-4,
    "E_ch_eV": 5.1984e-4,
    "lambda_m": 0.001,
    "cavity_kind": "full",
    "S_m2": 1e-10
  },
)";
  if (scenario == "cat") {
    return "// Cat-state preparation from |0>|g>, then charge readout.\n{\n"
           "  \"scenario\": \"cat\",\n" + device +
           "  // Interaction time: \"tau\" in seconds or \"omega_tau\" = omega * tau.\n"
           "  \"omega_tau\": 3.141592653589793,\n"
           "  // Optional: override the geometric coupling, \"coupling\": {\"xi\": [0.5, 0]}\n"
           "  \"wigner\": {\"extent\": 3.0, \"points\": 41},\n"
           "  \"output\": {\"path\": \"cat.json\", \"format\": \"json\"}\n}\n";
  }
  if (scenario == "inject") {
    return "// Coherent injection |alpha'>|g>, readout, then the Phi_c = Phi_0 pulse.\n{\n"
           "  \"scenario\": \"inject\",\n" + device +
           "  \"alpha_prime\": [1.0, 0.0],\n"
           "  \"omega_tau\": 1.5707963267948966,\n"
           "  \"apply_pulse\": true,\n"
           "  \"output\": {\"path\": \"inject.json\"}\n}\n";
  }
  if (scenario == "squeeze") {
    return "// Second-order evolution of |gamma>|g> at Phi_c = 0.\n{\n"
           "  \"scenario\": \"squeeze\",\n" + device +
           "  \"gamma\": [0.5, 0.0],\n"
           "  // \"t\" in seconds or \"omega_t\" = omega * t.\n"
           "  \"omega_t\": 6.283185307179586,\n"
           "  \"output\": {\"path\": \"squeeze.json\"}\n}\n";
  }
  if (scenario == "sweep") {
    return "// Rabi frequency versus wavelength (omega = 4 E_ch / hbar, 100 um^2 loop,\n"
           "// qubit at the cavity centre, cavity volume L^3).\n{\n"
           "  \"scenario\": \"sweep\",\n"
           "  \"lambda_min_m\": 0.001,\n"
           "  \"lambda_max_m\": 0.15,\n"
           "  \"points\": 200,\n"
           "  \"ratios\": [4, 7, 10, 15],\n"
           "  \"kinds\": [\"full\", \"quarter\"],\n"
           "  \"output\": {\"path\": \"sweep.csv\", \"format\": \"csv\"}\n}\n";
  }
  if (scenario == "verify") {
    return "// Closed form versus exp(-iHt) on a uniform grid over [0, omega_t_max / omega].\n{\n"
           "  \"scenario\": \"verify\",\n" + device +
           "  // vacuum | coherent | pulse | squeeze\n"
           "  \"kind\": \"vacuum\",\n"
           "  \"points\": 20,\n"
           "  \"omega_t_max\": 12.566370614359172,\n"
           "  \"alpha_prime\": [0.0, 0.0],\n"
           "  \"output\": {\"path\": \"verify.json\"}\n}\n";
  }
  if (scenario == "feasibility") {
    return "// Timescale comparison: operation time, cavity lifetime, readout.\n{\n"
           "  \"scenario\": \"feasibility\",\n"
           "  \"device\": {\n"
           "    \"E_J_eV\": 1.2996e-4,\n"
           "    \"E_ch_eV\": 5.1984e-4,\n"
           "    \"lambda_m\": 0.001,\n"
           "    \"S_m2\": 1e-10,\n"
           "    \"Q\": 3e8\n"
           "  },\n"
           "  \"T1\": 1e-8,\n"
           "  \"T2\": 5e-9,\n"
           "  \"tau_m\": 4e-9,\n"
           "  \"output\": {\"path\": \"feasibility.json\"}\n}\n";
  }
  throw ConfigError("unknown scenario '" + std::string(scenario) + "'");
}

int run(const RunConfig& config, std::ostream& log) {
  if (config.output_path.empty()) {
    log << "error: no output path (set output.path or --out)\n";
    return kExitConfig;
  }
  try {
    std::string content;
    bool contract_ok = true;
    switch (config.scenario) {
      case ScenarioKind::cat: content = run_cat(config, log).dump(2); break;
      case ScenarioKind::inject: content = run_inject(config, log).dump(2); break;
      case ScenarioKind::squeeze: content = run_squeeze(config, log).dump(2); break;
      case ScenarioKind::verify: content = run_verify(config, log, contract_ok).dump(2); break;
      case ScenarioKind::feasibility: content = run_feasibility(config).dump(2); break;
      case ScenarioKind::sweep: {
        const auto rows = experiments::fig1_sweep(config.sweep);
        if (config.format == Format::csv) {
          content = experiments::sweep_csv(rows);
          log << "note: sweep assumes cavity volume V = L^3\n";
        } else {
          content = json{{"scenario", "sweep"},
                         {"volume_model", "V = L^3"},
                         {"rows", serialize::to_json(rows)}}
                        .dump(2);
        }
        break;
      }
    }
    if (config.format == Format::json) content += '\n';
    write_file(config.output_path, content);
    return contract_ok ? kExitOk : kExitNumerical;
  } catch (const NumericalError& e) {
    log << "numerical contract failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Cat and squeezed-state preparation in a cavity coupled to a SQUID charge qubit"};
  std::string config_path;
  std::string example;
  std::string out_path;
  long long seed = 0;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--print-example", example,
                 "print a commented template for SCENARIO (cat, inject, squeeze, sweep, verify, feasibility)");
  app.add_option("--out", out_path, "output path (overrides output.path)");
  app.add_option("--seed", seed, "reserved; no stochastic paths");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (!example.empty()) {
    try {
      std::cout << example_config(example);
      return kExitOk;
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kExitConfig;
    }
  }
  if (config_path.empty()) {
    std::cerr << "config error: --config PATH is required\n";
    return kExitConfig;
  }
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (!out_path.empty()) config.output_path = out_path;
  return run(config, std::cerr);
}

}  // namespace squidcav::cli
