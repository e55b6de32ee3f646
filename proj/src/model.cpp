#include "squidcav/model.h"

#include <cmath>

#include "squidcav/constants.h"
#include "squidcav/errors.h"

namespace squidcav::model {

using constants::pi;

std::string_view to_string(CavityKind kind) {
  switch (kind) {
    case CavityKind::full: return "full";
    case CavityKind::half: return "half";
    case CavityKind::quarter: return "quarter";
  }
  return "full";
}

CavityKind cavity_kind_from_string(std::string_view name) {
  if (name == "full") return CavityKind::full;
  if (name == "half") return CavityKind::half;
  if (name == "quarter") return CavityKind::quarter;
  throw PreconditionError("unknown cavity_kind '" + std::string(name) +
                          "' (expected full, half or quarter)");
}

std::string_view to_string(Order order) {
  switch (order) {
    case Order::cosine: return "cosine";
    case Order::first: return "first";
    case Order::second: return "second";
  }
  return "first";
}

double DeviceParams::cavity_length() const {
  switch (cavity_kind) {
    case CavityKind::full: return wavelength_m;
    case CavityKind::half: return wavelength_m / 2.0;
    case CavityKind::quarter: return wavelength_m / 4.0;
  }
  return wavelength_m;
}

double DeviceParams::position() const {
  return position_m.value_or(cavity_length() / 2.0);
}

double DeviceParams::omega() const {
  if (omega_override) return *omega_override;
  return 2.0 * pi * constants::speed_of_light / wavelength_m;
}

double DeviceParams::volume() const {
  const double l = cavity_length();
  return l * l * l;
}

double DeviceParams::josephson_rate() const {
  return josephson_ev * constants::elementary_charge / constants::hbar;
}

double DeviceParams::charging_rate() const {
  return charging_ev * constants::elementary_charge / constants::hbar;
}

double DeviceParams::ez_rate() const {
  return -2.0 * charging_rate() * (1.0 - 2.0 * gate_charge);
}

void DeviceParams::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw PreconditionError(std::string(key) + " must be > 0");
    }
  };
  positive(josephson_ev, "E_J_eV");
  positive(charging_ev, "E_ch_eV");
  positive(wavelength_m, "lambda_m");
  positive(squid_area_m2, "S_m2");
  if (omega_override) positive(*omega_override, "omega_rad_s");
  if (quality_factor) positive(*quality_factor, "Q");
  const double z = position();
  if (z < 0.0 || z > cavity_length()) {
    throw PreconditionError("z0_m must lie in [0, L]");
  }
}

std::vector<std::string> DeviceParams::warnings() const {
  std::vector<std::string> out;
  if (!(josephson_ev < charging_ev)) {
    out.emplace_back("E_J >= E_ch: outside the charge regime (E_J << E_ch)");
  }
  return out;
}

Coupling Coupling::from_xi(Complex xi) {
  return {std::abs(xi) * constants::flux_quantum / pi, xi};
}

Coupling coupling_xi(const DeviceParams& p) {
  p.validate();
  const double k = 2.0 * pi / p.wavelength_m;
  const double field = std::sqrt(constants::hbar * p.omega() /
                                 (constants::vacuum_permittivity * p.volume() *
                                  constants::speed_of_light * constants::speed_of_light));
  const double eta = p.squid_area_m2 * field * std::abs(std::cos(k * p.position()));
  const double xi_abs = pi * eta / constants::flux_quantum;
  return {eta, std::polar(xi_abs, p.xi_phase)};
}

double validity_margin(const Coupling& c, int n_max) {
  if (n_max < 0) throw PreconditionError("n_max must be >= 0");
  return pi * c.eta_abs * std::sqrt(n_max + 1.0) / constants::flux_quantum;
}

Eigen::Matrix2cd sigma_x() {
  Eigen::Matrix2cd s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

Eigen::Matrix2cd sigma_z() {
  Eigen::Matrix2cd s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

Matrix kron(const Eigen::Matrix2cd& qubit, const Matrix& cavity) {
  const Eigen::Index n = cavity.rows();
  Matrix out(2 * n, 2 * n);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block(i * n, j * n, n, n) = qubit(i, j) * cavity;
  }
  return out;
}

hilbert::FockOperator hamiltonian(const DeviceParams& p, const Coupling& c,
                                  Order order, int fock_dim) {
  const Matrix a = hilbert::annihilation(fock_dim);
  const Matrix adag = a.adjoint();
  const Matrix number = adag * a;
  const Matrix identity = Matrix::Identity(fock_dim, fock_dim);
  const Complex xi = c.xi;
  const double ej = p.josephson_rate();
  const double flux_phase = pi * p.flux_ratio;

  Matrix h = kron(Eigen::Matrix2cd::Identity(), p.omega() * number) +
             kron(sigma_z(), p.ez_rate() * identity);

  switch (order) {
    case Order::cosine: {
      // cos((pi Phi_c/Phi_0) I + xi a + xi* a^+) through the spectral
      // decomposition of its hermitian argument.
      const Matrix arg = flux_phase * identity + xi * a + std::conj(xi) * adag;
      Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (arg + arg.adjoint()));
      const Eigen::VectorXd cosines = solver.eigenvalues().array().cos();
      const Matrix cos_arg = solver.eigenvectors() *
                             cosines.cast<Complex>().asDiagonal() *
                             solver.eigenvectors().adjoint();
      h -= kron(sigma_x(), ej * cos_arg);
      break;
    }
    case Order::first: {
      h -= kron(sigma_x(), ej * std::cos(flux_phase) * identity);
      h += kron(sigma_x(), ej * std::sin(flux_phase) * (xi * a + std::conj(xi) * adag));
      break;
    }
    case Order::second: {
      if (p.flux_ratio != 0.0 || p.gate_charge != 0.5) {
        throw PreconditionError(
            "second-order Hamiltonian is defined only at phi_c_ratio = 0 and n_g = 1/2");
      }
      const double xi2 = std::norm(xi);
      h -= kron(sigma_x(), xi2 * ej * number);
      h -= kron(sigma_x(), ej * (1.0 + xi2 / 2.0) * identity);
      h -= kron(sigma_x(), ej * (0.5 * xi * xi * a * a +
                                 0.5 * std::conj(xi) * std::conj(xi) * adag * adag));
      break;
    }
  }
  return hilbert::FockOperator::hamiltonian(std::move(h));
}

}  // namespace squidcav::model
