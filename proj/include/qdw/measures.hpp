#pragma once

#include <array>
#include <vector>

#include "qdw/dynamics.hpp"
#include "qdw/hamiltonian.hpp"

namespace qdw {

// Shannon entropy -sum p log2 p of the basis distribution, in bits.
// Probabilities are clamped to [0, 1] before the log; 0 log 0 := 0.
double shannon_entropy(const BasisProbabilities& p);

// Concurrence C = 2 |a_ll a_rr - a_lr a_rl|, clamped to [0, 1] against
// rounding drift.
double concurrence(const TwoQubitState& psi);

// Closed-form squared concurrence for real expansion coefficients c over the
// Bell-limit eigensystem: with signs s = (-1, +1, -1, +1),
//   |C|^2(t) = c1 + sum_{i<j} 2 s_i s_j c_i^2 c_j^2 cos((E_j - E_i) * 2 t / hbar).
// The constant c1 is a calibration offset (see calibrate_c1; it equals
// sum_i c_i^4 for exact agreement).
double concurrence_sq_expansion(const std::array<double, 4>& c, const EigenSystem& es,
                                double t_s, double c1);

// Least-squares constant offset that aligns the six-cosine expansion with a
// sampled |C|^2 series: the mean of (sampled - oscillatory part).
double calibrate_c1(const std::array<double, 4>& c, const EigenSystem& es,
                    const std::vector<double>& t_s, const std::vector<double>& csq);

// Interference coefficient of the slow-envelope model:
//   beta = [(c3^2+c4^2)(c1^2+c2^2) - |c4^2-c3^2| |c2^2-c1^2|]
//          / [2 (c3^2 c4^2 + c1^2 c2^2)].
// Throws undefined_beta_error when the denominator vanishes (both slow pairs
// degenerate, e.g. c = (1,0,0,1)/sqrt(2)).
double beta_coefficient(const std::array<double, 4>& c);

// Beat envelope of a sampled series: local maxima become knots, joined by a
// monotone (Fritsch-Carlson) piecewise-cubic Hermite interpolant and clamped
// flat outside the outermost knots. A boundary sample becomes a knot only if
// it exceeds its neighbor and is no lower than the nearest interior peak,
// so a fast cycle cut mid-rise cannot inject a spurious knot. With fewer
// than two knots the envelope is the constant series maximum and
// `degenerate` is set.
struct Envelope {
    std::vector<double> values;
    std::vector<int> knot_indices;
    bool degenerate = false;
};
Envelope envelope_extract(const std::vector<double>& t_s, const std::vector<double>& y);

// Least-squares fit of y(t) ~ a * f(t) + c0 with the fixed basis
//   f(t) = w34 cos(2 omega_a t) + w12 cos(2 omega_b t),
//   w34 = (c3^2/2)(c4^2/2), w12 = (c1^2/2)(c2^2/2).
// Throws degenerate_fit_error when f is constant on the grid (for instance
// w34 = w12 = 0).
struct TwoCosineModel {
    double a = 0;
    double c0 = 0;
    double w34 = 0;
    double w12 = 0;
    double omega_a = 0;
    double omega_b = 0;
    double residual_rms = 0;
};
TwoCosineModel fit_two_cosine(const std::vector<double>& t_s, const std::vector<double>& y,
                              const std::array<double, 4>& c, const SpectralGaps& gaps);

// Least-squares fit of an envelope series against the slow-beat factor
//   g(t) = [w34 cos(2 omega_a t) + w12 cos(2 omega_b t)] / (w34 + w12),
// as env(t) ~ scale * g(t) + offset, reported as
//   env(t) ~ b (1 + beta) [g(t) + alpha],  b = scale / (1 + beta),
//   alpha = offset / scale.
// `c1` is not determined by this fit; callers record the six-cosine offset
// there. On an undefined beta or a constant basis the model is returned with
// `degenerate` set and only `beta_defined` meaningful.
struct EnvelopeModel {
    double b = 0;
    double alpha_const = 0;
    double beta = 0;
    double c1 = 0;
    double residual_rms = 0;
    bool beta_defined = false;
    bool degenerate = false;
};
EnvelopeModel fit_envelope_model(const std::vector<double>& t_s, const std::vector<double>& env,
                                 const std::array<double, 4>& c, const SpectralGaps& gaps);

enum class ExtremumKind { maximum, minimum };

struct Extremum {
    double t_s = 0;
    double value = 0;
    ExtremumKind kind = ExtremumKind::maximum;
};

// Interior extrema of a sampled series (strict three-point tests), with the
// location refined by a quadratic fit through the three samples. If
// min_prominence > 0 the series is affinely normalized to [0, 1] first and
// extrema with smaller prominence (height above the higher of the two
// surrounding valleys, walking out to the first strictly more extreme
// sample) are dropped.
std::vector<Extremum> extrema_times(const std::vector<double>& t_s, const std::vector<double>& y,
                                    double min_prominence = 0.0);

// Shape agreement between two series on a common grid. Both are affinely
// normalized to [0, 1]; a series whose relative range is below 1e-9 counts
// as constant. Pearson correlation is defined only if neither is constant.
// Extrema (prominence-filtered at 0.2) are greedily matched to the globally
// nearest unmatched extremum of the same kind; max_extremum_offset_s is the
// largest matched |dt| (0 when both series are constant, undefined when only
// one is).
struct AlignmentScore {
    double pearson = 0;
    bool pearson_defined = false;
    double max_extremum_offset_s = 0;
    bool offset_defined = false;
    int n_matched = 0;
    int n_unmatched = 0;
    bool a_constant = false;
    bool b_constant = false;
};
AlignmentScore alignment_score(const std::vector<double>& t_s, const std::vector<double>& a,
                               const std::vector<double>& b);

// Pearson correlation of two equal-length series (no constancy guard).
double pearson(const std::vector<double>& a, const std::vector<double>& b);

} // namespace qdw
