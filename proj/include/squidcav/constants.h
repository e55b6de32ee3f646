#pragma once

namespace squidcav::constants {

inline constexpr double pi = 3.14159265358979323846;

// Pinned CODATA values (SI).
inline constexpr double flux_quantum = 2.067833848e-15;       // Wb, h/2e
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double speed_of_light = 2.99792458e8;        // m/s
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C, J/eV

}  // namespace squidcav::constants
