#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qdw/constants.hpp"
#include "qdw/errors.hpp"
#include "qdw/measures.hpp"

using namespace qdw;

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = a + (b - a) * i / double(n - 1);
    return t;
}

} // namespace

TEST_CASE("shannon entropy of reference distributions") {
    CHECK(shannon_entropy({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(shannon_entropy({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(shannon_entropy({0.5, 0.5, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    // Tiny negative rounding noise is clamped, not propagated into the log.
    CHECK(std::isfinite(shannon_entropy({1.0 + 1e-16, -1e-18, 0.0, 0.0})));
}

TEST_CASE("concurrence of reference states") {
    CHECK(concurrence(TwoQubitState(bell::phi_plus)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(concurrence(TwoQubitState(bell::psi_minus)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(concurrence(TwoQubitState(cvec4{1.0, 0.0, 0.0, 0.0})) == doctest::Approx(0.0));
    // Product state (|L> + |R>)(|L>)/sqrt(2) = (LL + RL)/sqrt(2): no entanglement.
    CHECK(concurrence(TwoQubitState::normalized(cvec4{1.0, 0.0, 1.0, 0.0})) ==
          doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("binary-entropy Fourier series pins the single-tone structure") {
    // For the ideal |LL> evolution, S(t) = h2((1 + cos x)/2) with x = w_a t.
    // Its Fourier series is (2 - log2 e) - sum_k cos(2 k x) / (ln2 * k (4k^2 - 1)):
    // the fundamental carries amplitude 1/(3 ln2) and the harmonics decay as
    // 1/k^3, which caps the single-bin AC power share below 99%.
    const double dc = 2.0 - std::log2(std::exp(1.0));
    auto series = [&](double x, int kmax) {
        double s = dc;
        for (int k = 1; k <= kmax; ++k)
            s -= std::cos(2.0 * k * x) / (std::log(2.0) * k * (4.0 * k * k - 1.0));
        return s;
    };
    for (double x : linspace(0.0, 2.0 * std::numbers::pi, 97)) {
        const double p = 0.5 * (1.0 + std::cos(x));
        const double h2 = shannon_entropy({p, 0.0, 0.0, 1.0 - p});
        // Truncation tail of the k <= 400 partial sum is ~1e-6.
        CHECK(std::abs(h2 - series(x, 400)) <= 2e-6);
    }
    CHECK(1.0 / (3.0 * std::log(2.0)) == doctest::Approx(0.48089834696298783).epsilon(1e-14));
}

TEST_CASE("six-cosine expansion reproduces the ideal |LL> concurrence") {
    const HamiltonianParams p(0.0, 2.66e-13, 2.7e-12);
    const EigenSystem ideal = bell_limit_system(p);
    const std::array<double, 4> c{0.0, 0.0, inv_sqrt2, inv_sqrt2};
    const SpectralGaps g = spectral_gaps(ideal);
    const double c1 = 0.5; // sum of c_i^4
    for (double t : linspace(0.0, 4.0 * std::numbers::pi / g.omega_a, 301)) {
        const double expansion = concurrence_sq_expansion(c, ideal, t, c1);
        const double direct = std::pow(std::sin(g.omega_a * t), 2); // |C|^2 of the ideal |LL> run
        CHECK(std::abs(expansion - direct) <= 1e-12);
    }
}

TEST_CASE("calibrate_c1 recovers the quartic sum") {
    const HamiltonianParams p(0.0, 2.66e-13, 2.7e-12);
    const EigenSystem ideal = bell_limit_system(p);
    const std::array<double, 4> c{0.5, 0.5, 0.5, 0.5};
    const SpectralGaps g = spectral_gaps(ideal);
    const std::vector<double> t = linspace(0.0, 20.0 * std::numbers::pi / g.omega_fast, 501);
    std::vector<double> csq(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        csq[i] = concurrence_sq_expansion(c, ideal, t[i], 0.25);
    CHECK(calibrate_c1(c, ideal, t, csq) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("beta coefficient reference values") {
    CHECK(beta_coefficient({0.5, 0.5, 0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta_coefficient({0.0, 0.0, inv_sqrt2, inv_sqrt2}) ==
          doctest::Approx(0.0).epsilon(1e-14));
    // c = (1/sqrt6, 1/sqrt6, 0, sqrt(2/3)): num = (2/3)(1/3), den = 2/36.
    const double s6 = 1.0 / std::sqrt(6.0);
    CHECK(beta_coefficient({s6, s6, 0.0, std::sqrt(2.0 / 3.0)}) ==
          doctest::Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(beta_coefficient({inv_sqrt2, 0.0, 0.0, inv_sqrt2}), undefined_beta_error);
}

TEST_CASE("envelope extraction on a synthetic beat") {
    // Carrier cos^2(12 t) under a smooth positive modulation: the envelope
    // must recover the modulation to a couple of percent of its range.
    const std::vector<double> t = linspace(0.0, 10.0, 4001);
    std::vector<double> y(t.size()), truth(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        truth[i] = 0.6 + 0.35 * std::cos(0.9 * t[i] + 0.4);
        const double carrier = std::cos(12.0 * t[i]);
        y[i] = truth[i] * carrier * carrier;
    }
    const Envelope env = envelope_extract(t, y);
    REQUIRE(!env.degenerate);
    const double range = 0.7;
    double worst = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        worst = std::max(worst, std::abs(env.values[i] - truth[i]));
    CHECK(worst <= 0.02 * range);
}

TEST_CASE("envelope of a bare squared carrier is one") {
    // The window cuts the last cycle mid-rise: the boundary sample must not
    // become a knot, so the clamped envelope stays at the peak level.
    const std::vector<double> t = linspace(0.0, 9.9, 2001);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double carrier = std::cos(4.0 * t[i]);
        y[i] = carrier * carrier;
    }
    const Envelope env = envelope_extract(t, y);
    REQUIRE(!env.degenerate);
    // Sampled peaks miss the true maximum by up to dt/2 where
    // cos^2(4t) = 1 - 16 (t - t_peak)^2 + O(delta^4), so each knot sits
    // within 16 (dt/2)^2 < 1e-4 of 1 and the monotone interpolant stays
    // between knots.
    for (double v : env.values) {
        CHECK(v >= 1.0 - 1e-4);
        CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("degenerate envelopes") {
    const std::vector<double> t = linspace(0.0, 1.0, 101);
    SUBCASE("constant series") {
        const std::vector<double> y(t.size(), 0.75);
        const Envelope env = envelope_extract(t, y);
        CHECK(env.degenerate);
        for (double v : env.values) CHECK(v == 0.75);
    }
    SUBCASE("monotone series has no interior peak") {
        std::vector<double> y(t.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = double(i);
        const Envelope env = envelope_extract(t, y);
        CHECK(env.degenerate);
        for (double v : env.values) CHECK(v == 100.0);
    }
}

TEST_CASE("two-cosine fit recovers a synthetic model and flags a constant basis") {
    const HamiltonianParams p(0.0, 2.66e-13, 2.7e-12);
    const SpectralGaps g = spectral_gaps(closed_form_spectrum(p));
    const std::array<double, 4> c{0.5, 0.5, 0.5, 0.5};
    const std::vector<double> t = linspace(0.0, 2.0 * std::numbers::pi / g.omega_a, 801);
    std::vector<double> y(t.size());
    const double w34 = 0.25 * c[2] * c[2] * c[3] * c[3];
    const double w12 = 0.25 * c[0] * c[0] * c[1] * c[1];
    for (std::size_t i = 0; i < t.size(); ++i)
        y[i] = -3.0 * (w34 * std::cos(2.0 * g.omega_a * t[i]) +
                       w12 * std::cos(2.0 * g.omega_b * t[i])) +
               0.7;
    const TwoCosineModel fit = fit_two_cosine(t, y, c, g);
    CHECK(fit.a == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(fit.c0 == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(fit.residual_rms <= 1e-12);

    // c2 = c3 = 0 zeroes both weights: the basis is constant.
    CHECK_THROWS_AS(fit_two_cosine(t, y, {inv_sqrt2, 0.0, 0.0, inv_sqrt2}, g),
                    degenerate_fit_error);
}

TEST_CASE("extrema detection and refinement on a sine") {
    const std::vector<double> t = linspace(0.0, 6.5 * std::numbers::pi, 2001);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = std::sin(t[i]);
    const auto ex = extrema_times(t, y);
    REQUIRE(ex.size() == 6);
    int k = 0;
    for (const auto& e : ex) {
        const double expected = (0.5 + k) * std::numbers::pi; // alternating max/min
        CHECK(e.t_s == doctest::Approx(expected).epsilon(1e-6));
        CHECK(e.kind == (k % 2 == 0 ? ExtremumKind::maximum : ExtremumKind::minimum));
        ++k;
    }
}

TEST_CASE("prominence filtering drops micro-ripple") {
    const std::vector<double> t = linspace(0.0, 12.0, 6001);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        y[i] = std::cos(t[i]) + 0.01 * std::cos(40.0 * t[i]);
    const auto raw = extrema_times(t, y);
    CHECK(raw.size() > 20); // the ripple shows up unfiltered
    const auto filtered = extrema_times(t, y, 0.2);
    REQUIRE(filtered.size() == 3);
    // The surviving extremum of each cluster sits within half a ripple
    // wavelength (~0.08) of the underlying cosine extremum.
    CHECK(filtered[0].kind == ExtremumKind::minimum);
    CHECK(filtered[0].t_s == doctest::Approx(std::numbers::pi).epsilon(0.03));
    CHECK(filtered[1].kind == ExtremumKind::maximum);
    CHECK(filtered[1].t_s == doctest::Approx(2.0 * std::numbers::pi).epsilon(0.03));
    CHECK(filtered[2].kind == ExtremumKind::minimum);
    CHECK(filtered[2].t_s == doctest::Approx(3.0 * std::numbers::pi).epsilon(0.03));
}

TEST_CASE("alignment score") {
    const std::vector<double> t = linspace(0.0, 4.0 * std::numbers::pi, 2001);
    std::vector<double> a(t.size()), shifted(t.size()), flat(t.size(), 1.0);
    const double shift = 0.05;
    for (std::size_t i = 0; i < t.size(); ++i) {
        a[i] = std::sin(t[i]);
        shifted[i] = std::sin(t[i] - shift);
    }
    SUBCASE("identical series align perfectly") {
        const AlignmentScore s = alignment_score(t, a, a);
        CHECK(s.pearson_defined);
        CHECK(s.pearson == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.offset_defined);
        CHECK(s.max_extremum_offset_s <= 1e-9);
        CHECK(s.n_unmatched == 0);
        CHECK(s.n_matched == 4);
    }
    SUBCASE("a time shift shows up as the extremum offset") {
        const AlignmentScore s = alignment_score(t, a, shifted);
        CHECK(s.offset_defined);
        CHECK(s.max_extremum_offset_s == doctest::Approx(shift).epsilon(0.02));
    }
    SUBCASE("two constants align trivially") {
        const AlignmentScore s = alignment_score(t, flat, flat);
        CHECK(!s.pearson_defined);
        CHECK(s.offset_defined);
        CHECK(s.max_extremum_offset_s == 0.0);
    }
    SUBCASE("one constant leaves both measures undefined") {
        const AlignmentScore s = alignment_score(t, a, flat);
        CHECK(!s.pearson_defined);
        CHECK(!s.offset_defined);
        CHECK(s.b_constant);
        CHECK(!s.a_constant);
    }
}
