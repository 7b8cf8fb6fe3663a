#pragma once

namespace qsense {

// CODATA 2018 (k_B exact since the SI redefinition).
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double boltzmann = 1.380649e-23;    // J/K

inline constexpr const char* version = "0.1.0";

}  // namespace qsense
