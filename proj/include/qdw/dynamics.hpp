#pragma once

#include <array>
#include <vector>

#include "qdw/hamiltonian.hpp"
#include "qdw/linalg.hpp"

namespace qdw {

// A normalized two-particle pure state in the (LL, LR, RL, RR) basis.
// The constructor requires the amplitudes to be normalized to 1e-12;
// `normalized` rescales arbitrary non-zero amplitudes instead.
struct TwoQubitState {
    cvec4 amplitudes{};

    explicit TwoQubitState(const cvec4& amps);
    static TwoQubitState normalized(const cvec4& amps);
    // Skip the normalization check (for amplitudes normalized by construction,
    // e.g. unitary evolution of a normalized state).
    static TwoQubitState unchecked(const cvec4& amps);

private:
    struct unchecked_tag {};
    TwoQubitState(const cvec4& amps, unchecked_tag) : amplitudes(amps) {}
};

// Expansion of an initial state over an eigenbasis: c[i] = <ES_i|psi0>.
struct ExpansionCoefficients {
    std::array<cplx, 4> c{};
};

// Uniform time grid over [t_start_s, t_end_s] with n_samples points,
// endpoints included.
struct TimeGrid {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
    int n_samples = 0;

    TimeGrid() = default; // empty sentinel, filled later
    TimeGrid(double t_start, double t_end, int n);

    double time(int i) const;
    double dt() const { return n_samples > 1 ? (t_end_s - t_start_s) / (n_samples - 1) : 0.0; }

    // Grid over [0, t_end] dense enough to resolve every transition: at
    // least `min_samples` points and at least 40 samples per fastest period
    // 2*pi*hbar/(E4 - E1).
    static TimeGrid dense(const EigenSystem& es, double t_end_s, int min_samples = 1001);
};

// Occupation probabilities of the four localized basis states.
struct BasisProbabilities {
    double p_ll = 0, p_lr = 0, p_rl = 0, p_rr = 0;
};

// Sampled observables of one evolution. `envelope` is filled by the measures
// layer (beat envelope of concurrence_sq) and may be empty.
struct Trajectory {
    TimeGrid grid;
    std::vector<BasisProbabilities> probabilities;
    std::vector<double> entropy_bits;
    std::vector<double> concurrence;
    std::vector<double> concurrence_sq;
    std::vector<double> envelope;
};

ExpansionCoefficients expand_initial_state(const TwoQubitState& psi0, const EigenSystem& es);

// psi(t) = sum_i c_i exp(-i E_i t / hbar) |ES_i>.
TwoQubitState evolve(const ExpansionCoefficients& coeffs, const EigenSystem& es, double t_s);

BasisProbabilities basis_probabilities(const TwoQubitState& psi);

// The expansion coefficients as real numbers. Under the eigenvector phase
// convention, real initial amplitudes give real coefficients; throws
// invalid_input_error if any imaginary part exceeds 1e-10.
std::array<double, 4> real_coefficients(const ExpansionCoefficients& coeffs);

// Closed-form probabilities in the strong-interaction (Bell) limit for real
// coefficients c over eigensystem `es`:
//   p_ll/p_rr = c3^2/2 + c4^2/2 +/- c3 c4 cos(omega_a t)
//   p_lr/p_rl = c1^2/2 + c2^2/2 +/- c1 c2 cos(omega_b t)
// (c 1-indexed against ascending energies).
BasisProbabilities bell_limit_probabilities(const std::array<double, 4>& c,
                                            const EigenSystem& es, double t_s);

// Sample the evolution of psi0 under eigensystem `es` on `grid`: basis
// probabilities, Shannon entropy, concurrence and squared concurrence at
// every grid point. `threads` > 1 splits the grid across that many workers;
// results are identical regardless of thread count.
Trajectory compute_trajectory(const TwoQubitState& psi0, const EigenSystem& es,
                              const TimeGrid& grid, int threads = 1);

// Same, diagonalizing `p` in closed form first.
Trajectory compute_trajectory(const TwoQubitState& psi0, const HamiltonianParams& p,
                              const TimeGrid& grid, int threads = 1);

} // namespace qdw
