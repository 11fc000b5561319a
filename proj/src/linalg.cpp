#include "qdw/linalg.hpp"

#include <cmath>
#include <sstream>

#include "qdw/errors.hpp"

namespace qdw {

cplx inner(const cvec4& a, const cvec4& b) {
    cplx s = 0;
    for (int i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm(const cvec4& a) {
    double s = 0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
}

cvec4 sub(const cvec4& a, const cvec4& b) {
    cvec4 r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
}

cvec4 scale(const cvec4& a, cplx s) {
    cvec4 r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] * s;
    return r;
}

cvec4 matvec(const cmat4& m, const cvec4& v) {
    cvec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) r[i] += m[i][k] * v[k];
    return r;
}

double frobenius_norm(const cmat4& m) {
    double s = 0;
    for (const auto& row : m)
        for (const auto& v : row) s += std::norm(v);
    return std::sqrt(s);
}

double hermiticity_defect(const cmat4& m) {
    double d = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(m[i][j] - std::conj(m[j][i])));
    return d;
}

HermitianMatrix4::HermitianMatrix4(const cmat4& entries) : m(entries) {
    const double scale = std::max(frobenius_norm(entries), 1.0);
    const double defect = hermiticity_defect(entries);
    if (!(defect <= 1e-12 * scale)) {
        std::ostringstream os;
        os << "matrix is not Hermitian: defect " << defect << " exceeds 1e-12 * " << scale;
        throw invalid_input_error(os.str());
    }
}

namespace {

double offdiag_norm(const cmat4& a) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s += std::norm(a[i][j]);
    return std::sqrt(s);
}

} // namespace

JacobiResult jacobi_hermitian(const cmat4& h) {
    // Work on the exactly Hermitian part so rounding in the caller's entries
    // cannot push the iteration off the Hermitian manifold.
    cmat4 a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = 0.5 * (h[i][j] + std::conj(h[j][i]));

    cmat4 v{}; // columns accumulate the eigenvectors
    for (int i = 0; i < 4; ++i) v[i][i] = 1.0;

    const double scale = frobenius_norm(a);
    const double tol = 1e-14 * std::max(scale, 1e-300);
    constexpr int max_sweeps = 100;

    int sweep = 0;
    double off = offdiag_norm(a);
    for (; sweep < max_sweeps && off > tol; ++sweep) {
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = a[p][q];
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;

                // Unitary plane rotation J: J[p][p] = c, J[p][q] = s*u,
                // J[q][p] = -s*conj(u), J[q][q] = c, with u the phase of
                // a[p][q]. The stabilized tangent choice keeps |t| <= 1.
                const cplx u = apq / mag;
                const double tau = (a[q][q].real() - a[p][p].real()) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                const cplx sigma = s * u;

                // A <- J^H A J, exploiting Hermiticity: update columns p, q
                // for all rows, then mirror.
                const double app = a[p][p].real(), aqq = a[q][q].real();
                a[p][p] = app * c * c + aqq * s * s - 2.0 * s * c * mag;
                a[q][q] = app * s * s + aqq * c * c + 2.0 * s * c * mag;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for (int k = 0; k < 4; ++k) {
                    if (k == p || k == q) continue;
                    const cplx akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - std::conj(sigma) * akq;
                    a[k][q] = sigma * akp + c * akq;
                    a[p][k] = std::conj(a[k][p]);
                    a[q][k] = std::conj(a[k][q]);
                }
                for (int k = 0; k < 4; ++k) {
                    const cplx vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - std::conj(sigma) * vkq;
                    v[k][q] = sigma * vkp + c * vkq;
                }
            }
        }
        off = offdiag_norm(a);
    }

    if (off > tol) {
        std::ostringstream os;
        os << "Jacobi iteration did not converge in " << max_sweeps
           << " sweeps: off-diagonal norm " << off << " (tolerance " << tol << ")";
        throw numeric_error(os.str());
    }

    JacobiResult r;
    r.sweeps = sweep;
    r.off_norm = off;
    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> diag{a[0][0].real(), a[1][1].real(), a[2][2].real(), a[3][3].real()};
    // Stable insertion sort keeps the accumulation order within ties.
    for (int i = 1; i < 4; ++i)
        for (int j = i; j > 0 && diag[order[j]] < diag[order[j - 1]]; --j)
            std::swap(order[j], order[j - 1]);
    for (int i = 0; i < 4; ++i) {
        r.values[i] = diag[order[i]];
        for (int k = 0; k < 4; ++k) r.vectors[i][k] = v[k][order[i]];
    }
    return r;
}

} // namespace qdw
