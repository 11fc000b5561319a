#pragma once

#include <array>
#include <complex>

namespace qdw {

using cplx = std::complex<double>;
using cvec4 = std::array<cplx, 4>;
using cmat4 = std::array<cvec4, 4>; // row-major: m[row][col]

// Inner product conj(a)·b.
cplx inner(const cvec4& a, const cvec4& b);

// Euclidean norm.
double norm(const cvec4& a);

// a - b.
cvec4 sub(const cvec4& a, const cvec4& b);

// s * a.
cvec4 scale(const cvec4& a, cplx s);

// Matrix-vector product m·v.
cvec4 matvec(const cmat4& m, const cvec4& v);

// Frobenius norm.
double frobenius_norm(const cmat4& m);

// Largest Hermiticity violation max_ij |m[i][j] - conj(m[j][i])|.
double hermiticity_defect(const cmat4& m);

// A 4x4 complex matrix checked to be Hermitian on construction
// (defect <= 1e-12 relative to the Frobenius norm, else invalid_input_error).
struct HermitianMatrix4 {
    cmat4 m;
    explicit HermitianMatrix4(const cmat4& entries);
};

// Result of the cyclic Jacobi eigensolver: eigenvalues ascending, vectors[i]
// is the unit eigenvector paired with values[i] (no phase convention applied).
struct JacobiResult {
    std::array<double, 4> values;
    std::array<cvec4, 4> vectors;
    int sweeps = 0;       // sweeps actually performed
    double off_norm = 0;  // remaining off-diagonal Frobenius norm
};

// Cyclic Jacobi diagonalization of a complex Hermitian 4x4 matrix using
// two-sided unitary plane rotations. Runs until the off-diagonal norm drops
// below 1e-14 * ||H||_F, at most 100 sweeps; throws numeric_error (with the
// residual in the message) if the tolerance is not reached.
JacobiResult jacobi_hermitian(const cmat4& h);

} // namespace qdw
