#include <cmath>

#include "doctest.h"
#include "fixtures.h"
#include "squidcav/errors.h"
#include "squidcav/experiments.h"

using namespace squidcav;
using namespace squidcav::experiments;
using model::CavityKind;
using fixtures::kPi;

TEST_CASE("rabi frequency examples") {
  const auto near = fig1_device(0.1e-2, 4.0, CavityKind::full);
  const auto far = fig1_device(5e-2, 4.0, CavityKind::full);
  const auto cn = model::coupling_xi(near);
  const auto cf = model::coupling_xi(far);
  const double hz_near = rabi_frequency_hz(near, cn);
  const double hz_far = rabi_frequency_hz(far, cf);
  CHECK(hz_near == doctest::Approx(1.4e6).epsilon(0.05));
  CHECK(hz_far == doctest::Approx(11.0).epsilon(0.1));
  // |Omega| / 2 pi = |xi| omega / (32 pi) when E_J = hbar omega / 16.
  CHECK(hz_near == doctest::Approx(std::abs(cn.xi) * near.omega() / (32.0 * kPi)).epsilon(1e-12));
  CHECK(hz_far == doctest::Approx(std::abs(cf.xi) * far.omega() / (32.0 * kPi)).epsilon(1e-12));
  CHECK(rabi_frequency_hz(near, model::Coupling::from_xi(0.0)) == 0.0);
}

TEST_CASE("fig1 device") {
  const auto p = fig1_device(2e-2, 7.0, CavityKind::quarter);
  CHECK(p.charging_rate() == doctest::Approx(p.omega() / 4.0).epsilon(1e-14));
  CHECK(p.josephson_rate() == doctest::Approx(p.omega() / 28.0).epsilon(1e-14));
  CHECK(p.position() == doctest::Approx(2e-2 / 8.0));
  CHECK(p.squid_area_m2 == 100e-12);
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-3, 0.15, 200);
  CHECK(g.size() == 200);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 0.15);
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] > g[k - 1]);
  CHECK(log_grid(2.0, 3.0, 1) == std::vector<double>{2.0});
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), PreconditionError);
  CHECK(default_lambda_grid() == g);
}

TEST_CASE("fig1 sweep properties") {
  SweepConfig config;
  config.lambdas = default_lambda_grid();
  config.threads = 4;
  const auto rows = fig1_sweep(config);
  REQUIRE(rows.size() == 200 * 4 * 2);
  const std::size_t nl = 200;
  auto at = [&](std::size_t kind, std::size_t ratio, std::size_t l) -> const SweepRow& {
    return rows[(kind * 4 + ratio) * nl + l];
  };
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t r = 0; r < 4; ++r) {
      CHECK(at(k, r, 0).cavity_kind == config.kinds[k]);
      CHECK(at(k, r, 0).ratio == config.ratios[r]);
      for (std::size_t l = 0; l < nl; ++l) {
        CHECK(at(k, r, l).rabi_hz >= 0.0);
        if (l > 0) CHECK(at(k, r, l).rabi_hz < at(k, r, l - 1).rabi_hz);
        if (r > 0) CHECK(at(k, r, l).rabi_hz < at(k, r - 1, l).rabi_hz);
      }
    }
  }
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t l = 0; l < nl; ++l) {
      const double ratio = at(1, r, l).rabi_hz / at(0, r, l).rabi_hz;
      CHECK(ratio == doctest::Approx(8.0 * std::sqrt(0.5)).epsilon(1e-9));
    }
  }
}

TEST_CASE("sweep is deterministic and thread-count independent") {
  SweepConfig config;
  config.lambdas = log_grid(1e-3, 0.15, 37);
  config.kinds = {CavityKind::full, CavityKind::half, CavityKind::quarter};
  config.threads = 1;
  const std::string serial = sweep_csv(fig1_sweep(config));
  for (unsigned t : {2u, 3u, 8u}) {
    config.threads = t;
    CHECK(sweep_csv(fig1_sweep(config)) == serial);
  }
  CHECK(serial.substr(0, serial.find('\n')) == "lambda_m,cavity_kind,ratio,xi_abs,rabi_hz");
  CHECK(std::count(serial.begin(), serial.end(), '\n') == 1 + 37 * 4 * 3);

  SweepConfig empty;
  CHECK_THROWS_AS(fig1_sweep(empty), PreconditionError);
}

TEST_CASE("feasibility") {
  auto near = fig1_device(0.1e-2, 4.0, CavityKind::full);
  near.quality_factor = 3e8;
  auto far = fig1_device(15e-2, 4.0, CavityKind::full);
  far.quality_factor = 3e8;
  const auto a = feasibility_report(near, 1e-8, 5e-9, 4e-9);
  const auto b = feasibility_report(far, 1e-8, 5e-9, 4e-9);
  CHECK(2.0 * kPi * a.t_d == doctest::Approx(1.0e-3).epsilon(0.01));
  CHECK(2.0 * kPi * b.t_d == doctest::Approx(0.15).epsilon(0.01));
  CHECK(a.t_d == doctest::Approx(3e8 / near.omega()).epsilon(1e-15));
  CHECK(a.readout_within_lifetimes);
  CHECK(a.t_q == doctest::Approx(1.0 / (2.0 * kPi * rabi_frequency_hz(near, model::coupling_xi(near)))));
  CHECK_FALSE(a.operation_within_coherence);
  const auto slow = feasibility_report(near, 1.0, 1.0, 6e-9);
  CHECK(slow.operation_within_coherence);
  CHECK(feasibility_report(near, 1e-8, 5e-9, 6e-9).readout_within_lifetimes == false);

  CHECK_THROWS_AS(feasibility_report(near, 0.0, 5e-9, 4e-9), PreconditionError);
  auto no_q = near;
  no_q.quality_factor.reset();
  CHECK_THROWS_AS(feasibility_report(no_q, 1e-8, 5e-9, 4e-9), PreconditionError);
}

TEST_CASE("verify harness") {
  auto p = fixtures::preparation_device();
  const auto c = model::coupling_xi(p);
  VerifyRequest req;
  for (int k = 0; k < 20; ++k) req.times.push_back(4.0 * kPi / p.omega() * k / 19.0);

  SUBCASE("vacuum") {
    const auto r = verify_analytic_numeric(p, c, req);
    CHECK(r.max_infidelity <= 1e-8);
    CHECK(r.infidelities.size() == 20);
    CHECK(r.fock_dim <= 128);
  }
  SUBCASE("coherent with alpha' = 2") {
    req.scenario = Scenario::coherent;
    req.alpha_prime = 2.0;
    const auto r = verify_analytic_numeric(p, c, req);
    CHECK(r.max_infidelity <= 1e-8);
  }
  SUBCASE("squeeze at the physical coupling") {
    p.flux_ratio = 0.0;
    req.scenario = Scenario::squeeze;
    req.gamma = Complex(1.0, 0.5);
    CHECK(verify_analytic_numeric(p, c, req).max_infidelity <= 1e-8);
  }
  SUBCASE("explicit dimension too small") {
    req.scenario = Scenario::coherent;
    req.alpha_prime = 3.0;
    req.fock_dim = 10;
    CHECK_THROWS_AS(verify_analytic_numeric(p, c, req), TruncationError);
  }
  SUBCASE("doubling N leaves the result unchanged") {
    req.scenario = Scenario::coherent;
    req.alpha_prime = Complex(1.5, -0.5);
    const auto strong = model::Coupling::from_xi(10.0);
    req.fock_dim = 64;
    const auto a = verify_analytic_numeric(p, strong, req);
    req.fock_dim = 128;
    const auto b = verify_analytic_numeric(p, strong, req);
    for (std::size_t k = 0; k < a.infidelities.size(); ++k) {
      CHECK(std::abs(a.infidelities[k] - b.infidelities[k]) < 1e-8);
    }
  }
  CHECK(scenario_from_string(to_string(Scenario::pulse)) == Scenario::pulse);
  CHECK_THROWS_AS(scenario_from_string("bogus"), PreconditionError);
}

TEST_CASE("expansion deviation scales as xi^2") {
  auto p = fixtures::preparation_device();
  p.flux_ratio = 0.25;
  std::vector<double> xs{1e-5, 2e-5, 4e-5}, ys;
  for (double x : xs) ys.push_back(expansion_deviation(p, model::Coupling::from_xi(x), 32));
  CHECK(log_log_slope(xs, ys) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(log_log_slope({1.0, 2.0, 4.0}, {3.0, 6.0, 12.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(log_log_slope({1.0}, {1.0}), PreconditionError);
}
