#pragma once

// Rabi-frequency sweeps, coupling bounds, timescale feasibility, and the
// analytic-vs-numeric cross-check harness.

#include <optional>
#include <string>
#include <vector>

#include "squidcav/analytic.h"
#include "squidcav/model.h"

namespace squidcav::experiments {

// |Omega| / 2 pi = |xi| E_J / (2 pi hbar), Hz.
double rabi_frequency_hz(const model::DeviceParams& p, const model::Coupling& c);

inline constexpr double kFig1SquidArea = 100e-12;  // 100 um^2

// omega = 2 pi c / lambda, E_ch = hbar omega / 4, E_J = E_ch / ratio, qubit at
// the cavity centre, 100 um^2 loop.
model::DeviceParams fig1_device(double wavelength_m, double ratio,
                                model::CavityKind kind);

struct SweepRow {
  double lambda_m = 0.0;
  model::CavityKind cavity_kind = model::CavityKind::full;
  double ratio = 0.0;
  double xi_abs = 0.0;
  double rabi_hz = 0.0;
};

struct SweepConfig {
  std::vector<double> lambdas;
  std::vector<double> ratios{4.0, 7.0, 10.0, 15.0};
  std::vector<model::CavityKind> kinds{model::CavityKind::full,
                                       model::CavityKind::quarter};
  unsigned threads = 1;
};

// `points` log-spaced values over [lo, hi], endpoints exact.
std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> default_lambda_grid();  // 200 points over [0.1, 15] cm

// Rows ordered kind-major, then ratio, then lambda, independent of `threads`.
std::vector<SweepRow> fig1_sweep(const SweepConfig& config);

inline constexpr const char* kSweepCsvHeader = "lambda_m,cavity_kind,ratio,xi_abs,rabi_hz";
std::string sweep_csv(const std::vector<SweepRow>& rows);

// How much shorter t_q must be than T2 to count as "much shorter".
inline constexpr double kMuchShorter = 0.1;

struct FeasibilityReport {
  double t_q = 0.0;  // 1/|Omega|
  double t_d = 0.0;  // Q/omega
  double T1 = 0.0;
  double T2 = 0.0;
  double tau_m = 0.0;
  bool operation_within_coherence = false;  // t_q <= 0.1 T2
  bool readout_within_lifetimes = false;    // tau_m < min(T2, t_d)
};

FeasibilityReport feasibility_report(const model::DeviceParams& p, double T1,
                                     double T2, double tau_m);

enum class Scenario { vacuum, coherent, pulse, squeeze };

std::string_view to_string(Scenario s);
Scenario scenario_from_string(std::string_view name);

struct VerifyRequest {
  Scenario scenario = Scenario::vacuum;
  std::vector<double> times;  // seconds: tau, tau1 or t depending on scenario
  Complex alpha_prime{};       // coherent, pulse
  Complex gamma{};             // squeeze
  std::optional<int> fock_dim;
};

struct VerifyResult {
  double max_infidelity = 0.0;
  std::vector<double> infidelities;
  int fock_dim = 0;
};

// Runs the closed form and exp(-iHt) on the same grid. The device must carry
// the scenario's flux setting (Phi_c/Phi_0 = 1/2 for vacuum/coherent/pulse, 0
// for squeeze); the pulse step itself switches to Phi_c = Phi_0.
VerifyResult verify_analytic_numeric(const model::DeviceParams& p,
                                     const model::Coupling& c,
                                     const VerifyRequest& request);

// Closed-form state for one grid point of a scenario.
analytic::BranchDecomposition analytic_state(const model::DeviceParams& p,
                                             const model::Coupling& c,
                                             const VerifyRequest& request,
                                             double time);

// max_k |E_k(cosine) - E_k(first)| over sorted spectra, rad/s.
double expansion_deviation(const model::DeviceParams& p, const model::Coupling& c,
                           int fock_dim);

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace squidcav::experiments
