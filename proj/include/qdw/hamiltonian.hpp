#pragma once

#include <array>

#include "qdw/linalg.hpp"

namespace qdw {

// Model parameters in eV: on-site energy epsilon0 of each well, tunneling
// matrix element delta (>= 0), contact interaction u (any sign).
struct HamiltonianParams {
    double epsilon0_eV = 0.0;
    double delta_eV = 0.0;
    double u_eV = 0.0;

    HamiltonianParams(double epsilon0, double delta, double u);
};

// The four Bell states in the localized product basis (LL, LR, RL, RR),
// canonical order: psi_plus, psi_minus, phi_minus, phi_plus.
namespace bell {
extern const cvec4 psi_plus;  // (|LR> + |RL>)/sqrt(2)
extern const cvec4 psi_minus; // (|LR> - |RL>)/sqrt(2)
extern const cvec4 phi_minus; // (|LL> - |RR>)/sqrt(2)
extern const cvec4 phi_plus;  // (|LL> + |RR>)/sqrt(2)
extern const std::array<cvec4, 4> canonical;
extern const std::array<const char*, 4> names;
} // namespace bell

// Eigenvalues ascending; vectors[i] is the unit eigenvector of energies_eV[i]
// in the (LL, LR, RL, RR) basis, with the global phase fixed so the
// largest-magnitude component is real and positive.
struct EigenSystem {
    std::array<double, 4> energies_eV{};
    std::array<cvec4, 4> vectors{};
};

// Angular transition frequencies in rad/s derived from the sorted energies.
struct SpectralGaps {
    double omega_a = 0;    // (E4 - E3)/hbar, the slow pair
    double omega_b = 0;    // (E2 - E1)/hbar, the other slow pair
    double omega_fast = 0; // (E4 - E1)/hbar, fastest transition
    double omega_42 = 0;
    double omega_32 = 0;
    double omega_41 = 0;
};

// Hamiltonian of two particles in a double well with contact interaction, in
// the localized basis (LL, LR, RL, RR):
//   diagonal 2*epsilon0 + u*zz with zz = +1 for aligned, -1 for anti-aligned,
//   off-diagonal delta for every single-particle tunneling event.
HermitianMatrix4 build_hamiltonian(const HamiltonianParams& p);

// Exact eigensystem in closed form. The spectrum is
//   {2 eps0 - s, 2 eps0 - u, 2 eps0 + u, 2 eps0 + s},  s = sqrt(u^2 + 4 delta^2);
// psi_minus and phi_minus are eigenvectors for every parameter choice, and the
// remaining pair mixes psi_plus with phi_plus. Energies are returned sorted
// ascending with their vectors, same conventions as EigenSystem.
EigenSystem closed_form_spectrum(const HamiltonianParams& p);

// Numerical eigensystem via cyclic Jacobi. Eigenvalue clusters closer than
// 1e-10 (relative) are re-spanned by projecting the canonical Bell states onto
// the degenerate subspace so the returned vectors are deterministic. Verifies
// H v = E v to 1e-10 * ||H||_F per vector, else throws numeric_error.
EigenSystem diagonalize(const HermitianMatrix4& h);

// Exact energies paired with the canonical Bell vectors: the eigensystem the
// model converges to in the strong-interaction limit |u| >> delta. Intended
// for u > 0, where the ascending energy order matches the canonical
// Bell order (psi_plus, psi_minus, phi_minus, phi_plus).
EigenSystem bell_limit_system(const HamiltonianParams& p);

// Squared overlap of each eigenvector with its canonical Bell partner:
// (ES1, psi_plus), (ES2, psi_minus), (ES3, phi_minus), (ES4, phi_plus).
std::array<double, 4> bell_fidelity(const EigenSystem& es);

SpectralGaps spectral_gaps(const EigenSystem& es);

} // namespace qdw
