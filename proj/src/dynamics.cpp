#include "qdw/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "qdw/constants.hpp"
#include "qdw/errors.hpp"
#include "qdw/measures.hpp"

namespace qdw {

TwoQubitState::TwoQubitState(const cvec4& amps) : amplitudes(amps) {
    for (const auto& a : amps)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw invalid_input_error("state amplitudes must be finite");
    const double n = norm(amps);
    if (std::abs(n - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "state is not normalized: |psi| = " << n << " (use TwoQubitState::normalized)";
        throw invalid_input_error(os.str());
    }
}

TwoQubitState TwoQubitState::normalized(const cvec4& amps) {
    for (const auto& a : amps)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw invalid_input_error("state amplitudes must be finite");
    const double n = norm(amps);
    if (n < 1e-12) throw invalid_input_error("cannot normalize a (near-)zero state");
    return TwoQubitState(scale(amps, cplx(1.0 / n, 0.0)));
}

TwoQubitState TwoQubitState::unchecked(const cvec4& amps) {
    return TwoQubitState(amps, unchecked_tag{});
}

TimeGrid::TimeGrid(double t_start, double t_end, int n)
    : t_start_s(t_start), t_end_s(t_end), n_samples(n) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || t_end < t_start)
        throw invalid_input_error("time grid bounds must be finite with t_end >= t_start");
    if (n < 2) throw invalid_input_error("time grid needs at least 2 samples");
}

double TimeGrid::time(int i) const {
    if (i == n_samples - 1) return t_end_s; // land exactly on the endpoint
    return t_start_s + dt() * i;
}

TimeGrid TimeGrid::dense(const EigenSystem& es, double t_end_s, int min_samples) {
    if (!(t_end_s > 0)) throw invalid_input_error("time grid length must be positive");
    if (min_samples < 2) min_samples = 2;
    const double gap = es.energies_eV[3] - es.energies_eV[0];
    long n = min_samples;
    if (gap > 0) {
        const double t_fast = 2.0 * std::numbers::pi * hbar_eVs / gap;
        const long by_rate = static_cast<long>(std::ceil(40.0 * t_end_s / t_fast)) + 1;
        n = std::max(n, by_rate);
    }
    if (n > 50'000'000)
        throw invalid_input_error("time grid would exceed 5e7 samples; shorten the window");
    return TimeGrid(0.0, t_end_s, static_cast<int>(n));
}

ExpansionCoefficients expand_initial_state(const TwoQubitState& psi0, const EigenSystem& es) {
    ExpansionCoefficients out;
    for (int i = 0; i < 4; ++i) out.c[i] = inner(es.vectors[i], psi0.amplitudes);
    return out;
}

TwoQubitState evolve(const ExpansionCoefficients& coeffs, const EigenSystem& es, double t_s) {
    cvec4 amps{};
    for (int i = 0; i < 4; ++i) {
        const cplx phase = std::polar(1.0, -es.energies_eV[i] * t_s / hbar_eVs);
        const cplx w = coeffs.c[i] * phase;
        for (int k = 0; k < 4; ++k) amps[k] += w * es.vectors[i][k];
    }
    return TwoQubitState::unchecked(amps);
}

BasisProbabilities basis_probabilities(const TwoQubitState& psi) {
    const auto& a = psi.amplitudes;
    return {std::norm(a[0]), std::norm(a[1]), std::norm(a[2]), std::norm(a[3])};
}

std::array<double, 4> real_coefficients(const ExpansionCoefficients& coeffs) {
    std::array<double, 4> c{};
    for (int i = 0; i < 4; ++i) {
        if (std::abs(coeffs.c[i].imag()) > 1e-10) {
            std::ostringstream os;
            os << "expansion coefficient " << i + 1 << " has imaginary part "
               << coeffs.c[i].imag() << "; the closed forms assume real coefficients";
            throw invalid_input_error(os.str());
        }
        c[i] = coeffs.c[i].real();
    }
    return c;
}

BasisProbabilities bell_limit_probabilities(const std::array<double, 4>& c,
                                            const EigenSystem& es, double t_s) {
    const SpectralGaps g = spectral_gaps(es);
    const double slow = 0.5 * (c[2] * c[2] + c[3] * c[3]);
    const double beat_a = c[2] * c[3] * std::cos(g.omega_a * t_s);
    const double other = 0.5 * (c[0] * c[0] + c[1] * c[1]);
    const double beat_b = c[0] * c[1] * std::cos(g.omega_b * t_s);
    return {slow + beat_a, other + beat_b, other - beat_b, slow - beat_a};
}

namespace {

void fill_range(Trajectory& traj, const ExpansionCoefficients& coeffs, const EigenSystem& es,
                int begin, int end) {
    for (int i = begin; i < end; ++i) {
        const TwoQubitState psi = evolve(coeffs, es, traj.grid.time(i));
        const BasisProbabilities p = basis_probabilities(psi);
        traj.probabilities[i] = p;
        traj.entropy_bits[i] = shannon_entropy(p);
        const double con = concurrence(psi);
        traj.concurrence[i] = con;
        traj.concurrence_sq[i] = con * con;
    }
}

} // namespace

Trajectory compute_trajectory(const TwoQubitState& psi0, const EigenSystem& es,
                              const TimeGrid& grid, int threads) {
    if (threads < 1) throw invalid_input_error("thread count must be >= 1");
    const ExpansionCoefficients coeffs = expand_initial_state(psi0, es);

    Trajectory traj{grid, {}, {}, {}, {}, {}};
    const int n = grid.n_samples;
    traj.probabilities.resize(n);
    traj.entropy_bits.resize(n);
    traj.concurrence.resize(n);
    traj.concurrence_sq.resize(n);

    const int workers = std::min(threads, n);
    if (workers <= 1) {
        fill_range(traj, coeffs, es, 0, n);
        return traj;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(static_cast<long>(n) * w / workers);
        const int end = static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
        pool.emplace_back(fill_range, std::ref(traj), std::cref(coeffs), std::cref(es), begin, end);
    }
    for (auto& th : pool) th.join();
    return traj;
}

Trajectory compute_trajectory(const TwoQubitState& psi0, const HamiltonianParams& p,
                              const TimeGrid& grid, int threads) {
    return compute_trajectory(psi0, closed_form_spectrum(p), grid, threads);
}

} // namespace qdw
