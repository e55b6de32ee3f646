#include "squidcav/experiments.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "squidcav/constants.h"
#include "squidcav/errors.h"

namespace squidcav::experiments {

using constants::pi;
using model::CavityKind;
using model::Coupling;
using model::DeviceParams;

double rabi_frequency_hz(const DeviceParams& p, const Coupling& c) {
  return std::abs(c.xi) * p.josephson_rate() / (2.0 * pi);
}

DeviceParams fig1_device(double wavelength_m, double ratio, CavityKind kind) {
  DeviceParams p;
  p.wavelength_m = wavelength_m;
  p.cavity_kind = kind;
  p.squid_area_m2 = kFig1SquidArea;
  const double hbar_omega_ev = constants::hbar * p.omega() / constants::elementary_charge;
  p.charging_ev = hbar_omega_ev / 4.0;
  p.josephson_ev = p.charging_ev / ratio;
  return p;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (points < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw PreconditionError("log grid needs points >= 1 and 0 < lo <= hi");
  }
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double step = std::log(hi / lo) / (points - 1);
  for (int k = 0; k < points; ++k) out[k] = lo * std::exp(step * k);
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_lambda_grid() { return log_grid(0.1e-2, 15e-2, 200); }

std::vector<SweepRow> fig1_sweep(const SweepConfig& config) {
  if (config.lambdas.empty() || config.ratios.empty() || config.kinds.empty()) {
    throw PreconditionError("sweep grid must be nonempty");
  }
  const std::size_t nl = config.lambdas.size();
  const std::size_t nr = config.ratios.size();
  const std::size_t total = nl * nr * config.kinds.size();
  std::vector<SweepRow> rows(total);

  auto compute = [&](std::size_t idx) {
    const std::size_t il = idx % nl;
    const std::size_t ir = (idx / nl) % nr;
    const std::size_t ik = idx / (nl * nr);
    const DeviceParams p = fig1_device(config.lambdas[il], config.ratios[ir], config.kinds[ik]);
    const Coupling c = model::coupling_xi(p);
    rows[idx] = {p.wavelength_m, p.cavity_kind, config.ratios[ir], std::abs(c.xi),
                 rabi_frequency_hz(p, c)};
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, total));
  if (threads == 1) {
    for (std::size_t i = 0; i < total; ++i) compute(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) compute(i);
      });
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  char buf[256];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g,%.17g\n", r.lambda_m,
                  std::string(model::to_string(r.cavity_kind)).c_str(), r.ratio,
                  r.xi_abs, r.rabi_hz);
    out += buf;
  }
  return out;
}

FeasibilityReport feasibility_report(const DeviceParams& p, double T1, double T2,
                                     double tau_m) {
  if (!(T1 > 0.0) || !(T2 > 0.0) || !(tau_m > 0.0)) {
    throw PreconditionError("T1, T2 and tau_m must be > 0");
  }
  if (!p.quality_factor) {
    throw PreconditionError("feasibility report needs the cavity quality factor Q");
  }
  const Coupling c = model::coupling_xi(p);
  FeasibilityReport r;
  r.t_d = *p.quality_factor / p.omega();
  r.t_q = 1.0 / (std::abs(c.xi) * p.josephson_rate());
  r.T1 = T1;
  r.T2 = T2;
  r.tau_m = tau_m;
  r.operation_within_coherence = r.t_q <= kMuchShorter * T2;
  r.readout_within_lifetimes = tau_m < std::min(T2, r.t_d);
  return r;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::vacuum: return "vacuum";
    case Scenario::coherent: return "coherent";
    case Scenario::pulse: return "pulse";
    case Scenario::squeeze: return "squeeze";
  }
  return "vacuum";
}

Scenario scenario_from_string(std::string_view name) {
  if (name == "vacuum") return Scenario::vacuum;
  if (name == "coherent") return Scenario::coherent;
  if (name == "pulse") return Scenario::pulse;
  if (name == "squeeze") return Scenario::squeeze;
  throw PreconditionError("unknown verify scenario '" + std::string(name) + "'");
}

analytic::BranchDecomposition analytic_state(const DeviceParams& p, const Coupling& c,
                                             const VerifyRequest& request, double time) {
  switch (request.scenario) {
    case Scenario::vacuum:
      return analytic::evolve_vacuum(p, c, time);
    case Scenario::coherent:
      return analytic::evolve_coherent(p, c, request.alpha_prime, time);
    case Scenario::pulse: {
      DeviceParams pulse = p;
      pulse.flux_ratio = 1.0;
      return analytic::flux_pi_pulse(
          analytic::evolve_coherent(p, c, request.alpha_prime, time), pulse);
    }
    case Scenario::squeeze:
      return analytic::squeezed_evolution(p, c, request.gamma, time);
  }
  throw PreconditionError("unknown scenario");
}

namespace {

hilbert::CavityState initial_cavity(const VerifyRequest& request, int n) {
  switch (request.scenario) {
    case Scenario::vacuum: return hilbert::coherent_fock(0.0, n);
    case Scenario::coherent:
    case Scenario::pulse: return hilbert::coherent_fock(request.alpha_prime, n);
    case Scenario::squeeze: return hilbert::coherent_fock(request.gamma, n);
  }
  throw PreconditionError("unknown scenario");
}

struct Attempt {
  VerifyResult result;
  double numeric_leakage = 0.0;
};

Attempt run_at(const DeviceParams& p, const Coupling& c, const VerifyRequest& request,
               const std::vector<analytic::BranchDecomposition>& states, int n) {
  const model::Order order =
      request.scenario == Scenario::squeeze ? model::Order::second : model::Order::first;
  const hilbert::Propagator evolve(model::hamiltonian(p, c, order, n));
  std::optional<hilbert::Propagator> pulse;
  DeviceParams pulse_device = p;
  if (request.scenario == Scenario::pulse) {
    pulse_device.flux_ratio = 1.0;
    pulse.emplace(model::hamiltonian(pulse_device, c, model::Order::first, n));
  }
  const hilbert::JointState psi0 =
      hilbert::JointState::product(Qubit::g, initial_cavity(request, n));

  Attempt out;
  out.result.fock_dim = n;
  for (std::size_t k = 0; k < request.times.size(); ++k) {
    hilbert::JointState numeric = evolve.apply(psi0, request.times[k]);
    if (pulse) numeric = pulse->apply(numeric, analytic::pulse_duration(pulse_device));
    const hilbert::JointState closed = analytic::materialize(states[k], n);
    const double infidelity = std::max(0.0, 1.0 - hilbert::fidelity(numeric, closed));
    out.result.infidelities.push_back(infidelity);
    out.result.max_infidelity = std::max(out.result.max_infidelity, infidelity);
    out.numeric_leakage = std::max(out.numeric_leakage, numeric.leakage());
  }
  return out;
}

}  // namespace

VerifyResult verify_analytic_numeric(const DeviceParams& p, const Coupling& c,
                                     const VerifyRequest& request) {
  if (request.times.empty()) throw PreconditionError("verify needs a nonempty time grid");
  std::vector<analytic::BranchDecomposition> states;
  states.reserve(request.times.size());
  int need = 2;
  for (double t : request.times) {
    states.push_back(analytic_state(p, c, request, t));
    need = std::max(need, analytic::required_dim(states.back()));
  }
  need = std::max(need, hilbert::required_coherent_dim(
                            request.scenario == Scenario::squeeze ? request.gamma
                                                                  : request.alpha_prime));

  if (request.fock_dim) {
    if (*request.fock_dim < need) {
      throw TruncationError("verify needs Fock dimension >= " + std::to_string(need), need);
    }
    return run_at(p, c, request, states, *request.fock_dim).result;
  }

  int n = hilbert::kDefaultFockDim;
  while (n < need) n *= 2;
  while (n <= hilbert::kMaxFockDim) {
    Attempt attempt = run_at(p, c, request, states, n);
    if (attempt.numeric_leakage < hilbert::kTruncationTail) return attempt.result;
    n *= 2;
  }
  throw TruncationError("numeric propagation leaks beyond Fock dimension " +
                            std::to_string(hilbert::kMaxFockDim),
                        -1);
}

double expansion_deviation(const DeviceParams& p, const Coupling& c, int fock_dim) {
  const auto cosine = model::hamiltonian(p, c, model::Order::cosine, fock_dim);
  const auto first = model::hamiltonian(p, c, model::Order::first, fock_dim);
  Eigen::SelfAdjointEigenSolver<Matrix> sa(cosine.matrix(), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> sb(first.matrix(), Eigen::EigenvaluesOnly);
  return (sa.eigenvalues() - sb.eigenvalues()).cwiseAbs().maxCoeff();
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionError("slope fit needs two or more matched points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace squidcav::experiments
