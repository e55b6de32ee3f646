#pragma once

// Device description for a SQUID-based charge qubit in a single-mode cavity:
// geometry -> dimensionless flux coupling xi, and the three Hamiltonian
// levels (operator cosine, first order in xi, second order in xi).
//
// Inputs are SI/eV; everything leaving this module is in rad/s (hbar = 1).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "squidcav/hilbert.h"

namespace squidcav::model {

enum class CavityKind { full, half, quarter };

std::string_view to_string(CavityKind kind);
CavityKind cavity_kind_from_string(std::string_view name);

struct DeviceParams {
  double josephson_ev = 0.0;  // E_J
  double charging_ev = 0.0;   // E_ch = e^2 / (C_g + 2 C_J)
  double gate_charge = 0.5;   // n_g
  double flux_ratio = 0.5;    // Phi_c / Phi_0
  double wavelength_m = 0.0;
  CavityKind cavity_kind = CavityKind::full;
  double squid_area_m2 = 0.0;
  std::optional<double> position_m;     // z0, defaults to L/2
  std::optional<double> quality_factor;
  std::optional<double> omega_override;  // rad/s, defaults to 2 pi c / lambda
  double xi_phase = 0.0;                 // arg(xi)

  double cavity_length() const;
  double position() const;
  double omega() const;
  double volume() const;  // L^3
  double josephson_rate() const;  // E_J / hbar, rad/s
  double charging_rate() const;   // E_ch / hbar, rad/s
  double ez_rate() const;          // E_z / hbar = -2 E_ch (1 - 2 n_g) / hbar

  // Throws PreconditionError on violated field invariants.
  void validate() const;
  // Soft violations (charge-regime ordering E_J < E_ch).
  std::vector<std::string> warnings() const;
};

struct Coupling {
  double eta_abs = 0.0;  // Wb
  Complex xi;            // pi eta / Phi_0

  // Coupling with a prescribed xi, e.g. for strong-coupling numerics.
  static Coupling from_xi(Complex xi);
};

Coupling coupling_xi(const DeviceParams& p);

inline constexpr double kExpansionWarnThreshold = 0.1;

// pi |eta| sqrt(n_max + 1) / Phi_0.
double validity_margin(const Coupling& c, int n_max);
inline bool expansion_unsafe(double margin) {
  return margin >= kExpansionWarnThreshold;
}

enum class Order { cosine, first, second };

std::string_view to_string(Order order);

hilbert::FockOperator hamiltonian(const DeviceParams& p, const Coupling& c,
                                  Order order, int fock_dim);

// Qubit-space helpers, basis (g, e) with sigma_z g = +g.
Eigen::Matrix2cd sigma_x();
Eigen::Matrix2cd sigma_z();
Matrix kron(const Eigen::Matrix2cd& qubit, const Matrix& cavity);

}  // namespace squidcav::model
