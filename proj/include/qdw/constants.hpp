#pragma once

namespace qdw {

// CODATA physical constants in eV·s.
inline constexpr double hbar_eVs = 6.582119569e-16;
inline constexpr double planck_eVs = 4.135667696e-15;

} // namespace qdw
