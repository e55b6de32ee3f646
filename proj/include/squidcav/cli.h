#pragma once

// Batch front end: one JSON run configuration in, one output file out.
//
// Exit status: 0 success, 2 configuration error, 3 numerical-contract failure.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "squidcav/experiments.h"
#include "squidcav/model.h"

namespace squidcav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Contract for the verify scenario's reported max infidelity.
inline constexpr double kVerifyContract = 1e-8;

enum class ScenarioKind { cat, inject, squeeze, sweep, verify, feasibility };

std::string_view to_string(ScenarioKind s);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A time given either in seconds or in units of 1/omega.
struct TimeSpec {
  std::optional<double> seconds;
  std::optional<double> omega_units;

  double resolve(double omega) const;
};

struct WignerGrid {
  double extent = 3.0;
  int points = 41;
};

enum class Format { csv, json };

struct RunConfig {
  ScenarioKind scenario = ScenarioKind::cat;
  std::optional<model::DeviceParams> device;
  std::optional<Complex> xi;  // replaces the geometric coupling when set
  std::optional<int> fock_dim;

  TimeSpec time;  // tau (cat, inject) or t (squeeze)
  Complex alpha_prime{};
  Complex gamma{};
  bool apply_pulse = true;
  WignerGrid wigner;

  experiments::SweepConfig sweep;

  experiments::Scenario verify_kind = experiments::Scenario::vacuum;
  int verify_points = 20;
  double verify_omega_t_max = 4.0 * 3.14159265358979323846;

  double T1 = 0.0;
  double T2 = 0.0;
  double tau_m = 0.0;

  std::filesystem::path output_path;
  Format format = Format::json;
};

// Throws ConfigError naming the offending key.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

// Commented JSON template (comments are accepted by load_config).
std::string example_config(std::string_view scenario);

// Executes the scenario, writes exactly one file at config.output_path, and
// returns the exit status. Diagnostics go to `log`.
int run(const RunConfig& config, std::ostream& log);

// argv front end used by the executable.
int main_entry(int argc, char** argv);

}  // namespace squidcav::cli
