#include "qdw/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qdw/constants.hpp"
#include "qdw/errors.hpp"

namespace qdw {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752440;
}

namespace bell {
const cvec4 psi_plus{0.0, inv_sqrt2, inv_sqrt2, 0.0};
const cvec4 psi_minus{0.0, inv_sqrt2, -inv_sqrt2, 0.0};
const cvec4 phi_minus{inv_sqrt2, 0.0, 0.0, -inv_sqrt2};
const cvec4 phi_plus{inv_sqrt2, 0.0, 0.0, inv_sqrt2};
const std::array<cvec4, 4> canonical{psi_plus, psi_minus, phi_minus, phi_plus};
const std::array<const char*, 4> names{"psi_plus", "psi_minus", "phi_minus", "phi_plus"};
} // namespace bell

HamiltonianParams::HamiltonianParams(double epsilon0, double delta, double u)
    : epsilon0_eV(epsilon0), delta_eV(delta), u_eV(u) {
    if (!std::isfinite(epsilon0) || !std::isfinite(delta) || !std::isfinite(u))
        throw invalid_input_error("Hamiltonian parameters must be finite");
    if (delta < 0)
        throw invalid_input_error("tunneling amplitude delta must be non-negative");
}

HermitianMatrix4 build_hamiltonian(const HamiltonianParams& p) {
    const double e = 2.0 * p.epsilon0_eV, d = p.delta_eV, u = p.u_eV;
    // Basis order (LL, LR, RL, RR); zz = +1 on LL/RR, -1 on LR/RL.
    cmat4 m{{{e + u, d, d, 0.0},
             {d, e - u, 0.0, d},
             {d, 0.0, e - u, d},
             {0.0, d, d, e + u}}};
    return HermitianMatrix4(m);
}

namespace {

// Fix the global phase: the largest-magnitude component (first one on ties)
// becomes real and positive.
cvec4 phase_fixed(const cvec4& v) {
    int k = 0;
    double best = std::abs(v[0]);
    for (int i = 1; i < 4; ++i) {
        const double a = std::abs(v[i]);
        if (a > best) {
            best = a;
            k = i;
        }
    }
    if (best == 0.0) return v;
    return scale(v, std::conj(v[k] / best));
}

cvec4 normalized_vec(const cvec4& v) {
    const double n = norm(v);
    return scale(v, cplx(1.0 / n, 0.0));
}

struct EnergyVector {
    double energy;
    cvec4 vector;
};

EigenSystem assemble(std::vector<EnergyVector> pairs) {
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EnergyVector& a, const EnergyVector& b) { return a.energy < b.energy; });
    EigenSystem es;
    for (int i = 0; i < 4; ++i) {
        es.energies_eV[i] = pairs[i].energy;
        es.vectors[i] = phase_fixed(pairs[i].vector);
    }
    return es;
}

} // namespace

EigenSystem closed_form_spectrum(const HamiltonianParams& p) {
    const double e = 2.0 * p.epsilon0_eV, d = p.delta_eV, u = p.u_eV;
    const double s = std::hypot(u, 2.0 * d);

    if (d == 0.0) {
        // Pure contact interaction: the Bell states themselves diagonalize H.
        return assemble({{e - u, bell::psi_plus},
                         {e - u, bell::psi_minus},
                         {e + u, bell::phi_minus},
                         {e + u, bell::phi_plus}});
    }

    // psi_minus and phi_minus are eigenvectors for all parameters; the
    // remaining pair mixes psi_plus and phi_plus:
    //   |lo> ~ 2 d |psi_plus> + (u - s) |phi_plus>   at energy e - s,
    //   |hi> ~ 2 d |psi_plus> + (u + s) |phi_plus>   at energy e + s.
    // Both forms are non-zero and mutually orthogonal for every sign of u.
    cvec4 lo{}, hi{};
    for (int k = 0; k < 4; ++k) {
        lo[k] = 2.0 * d * bell::psi_plus[k] + (u - s) * bell::phi_plus[k];
        hi[k] = 2.0 * d * bell::psi_plus[k] + (u + s) * bell::phi_plus[k];
    }
    return assemble({{e - s, normalized_vec(lo)},
                     {e - u, bell::psi_minus},
                     {e + u, bell::phi_minus},
                     {e + s, normalized_vec(hi)}});
}

namespace {

// Replace the eigenvectors of a near-degenerate cluster by the projections of
// the canonical Bell states onto the cluster's span, chosen greedily by
// projection norm (canonical order breaks ties), then orthonormalized. This
// makes the returned basis deterministic where the numerical one is not.
void canonicalize_cluster(std::array<cvec4, 4>& vectors, int begin, int end) {
    const int m = end - begin;
    if (m < 2) return;

    std::vector<cvec4> span(vectors.begin() + begin, vectors.begin() + end);
    std::vector<cvec4> chosen;
    std::array<bool, 4> used{};

    auto project = [&](const cvec4& b) {
        cvec4 proj{};
        for (const auto& v : span) {
            const cplx c = inner(v, b);
            for (int k = 0; k < 4; ++k) proj[k] += c * v[k];
        }
        return proj;
    };

    while (static_cast<int>(chosen.size()) < m) {
        int best = -1;
        double best_norm = 0.25; // require a substantial footprint in the span
        cvec4 best_vec{};
        for (int i = 0; i < 4; ++i) {
            if (used[i]) continue;
            cvec4 cand = project(bell::canonical[i]);
            for (const auto& c : chosen) {
                const cplx ov = inner(c, cand);
                for (int k = 0; k < 4; ++k) cand[k] -= ov * c[k];
            }
            const double n = norm(cand);
            if (n > best_norm) {
                best_norm = n;
                best = i;
                best_vec = cand;
            }
        }
        if (best < 0) break; // fall back to the remaining numerical vectors
        used[best] = true;
        chosen.push_back(normalized_vec(best_vec));
    }

    // Top up from the numerical span if the Bell projections did not fill it.
    for (const auto& v : span) {
        if (static_cast<int>(chosen.size()) >= m) break;
        cvec4 cand = v;
        for (const auto& c : chosen) {
            const cplx ov = inner(c, cand);
            for (int k = 0; k < 4; ++k) cand[k] -= ov * c[k];
        }
        if (norm(cand) > 1e-6) chosen.push_back(normalized_vec(cand));
    }

    for (int i = 0; i < m; ++i) vectors[begin + i] = chosen[i];
}

} // namespace

EigenSystem diagonalize(const HermitianMatrix4& h) {
    const JacobiResult jr = jacobi_hermitian(h.m);

    EigenSystem es;
    es.energies_eV = jr.values;
    es.vectors = jr.vectors;

    // Group eigenvalues into clusters closer than 1e-10 on the spectrum scale
    // and make each cluster's basis deterministic.
    double espan = std::abs(jr.values[0]);
    for (double v : jr.values) espan = std::max(espan, std::abs(v));
    espan = std::max(espan, jr.values[3] - jr.values[0]);
    const double cluster_tol = 1e-10 * std::max(espan, 1e-300);

    int begin = 0;
    for (int i = 1; i <= 4; ++i) {
        if (i == 4 || es.energies_eV[i] - es.energies_eV[i - 1] > cluster_tol) {
            canonicalize_cluster(es.vectors, begin, i);
            begin = i;
        }
    }
    for (auto& v : es.vectors) v = phase_fixed(v);

    // Residual check: H v = E v to 1e-10 * ||H||_F per vector.
    const double hnorm = std::max(frobenius_norm(h.m), 1e-300);
    for (int i = 0; i < 4; ++i) {
        const cvec4 res = sub(matvec(h.m, es.vectors[i]),
                              scale(es.vectors[i], cplx(es.energies_eV[i], 0.0)));
        const double r = norm(res);
        if (!(r <= 1e-10 * hnorm)) {
            std::ostringstream os;
            os << "eigenpair " << i + 1 << " failed the residual check: ||H v - E v|| = " << r
               << " exceeds 1e-10 * " << hnorm;
            throw numeric_error(os.str());
        }
    }
    return es;
}

EigenSystem bell_limit_system(const HamiltonianParams& p) {
    EigenSystem es = closed_form_spectrum(p);
    es.vectors = bell::canonical;
    return es;
}

std::array<double, 4> bell_fidelity(const EigenSystem& es) {
    std::array<double, 4> f{};
    for (int i = 0; i < 4; ++i) f[i] = std::norm(inner(bell::canonical[i], es.vectors[i]));
    return f;
}

SpectralGaps spectral_gaps(const EigenSystem& es) {
    const auto& e = es.energies_eV;
    SpectralGaps g;
    g.omega_a = (e[3] - e[2]) / hbar_eVs;
    g.omega_b = (e[1] - e[0]) / hbar_eVs;
    g.omega_fast = (e[3] - e[0]) / hbar_eVs;
    g.omega_42 = (e[3] - e[1]) / hbar_eVs;
    g.omega_32 = (e[2] - e[1]) / hbar_eVs;
    g.omega_41 = (e[3] - e[0]) / hbar_eVs;
    return g;
}

} // namespace qdw
