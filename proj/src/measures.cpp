#include "qdw/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdw/constants.hpp"
#include "qdw/errors.hpp"

namespace qdw {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

double plog2p(double p) {
    p = clamp01(p);
    return p > 0.0 ? p * std::log2(p) : 0.0;
}

int sgn(double v) { return (v > 0) - (v < 0); }

void require_series(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size()) throw invalid_input_error("time and value series differ in length");
    if (t.size() < 3) throw invalid_input_error("series needs at least 3 samples");
}

} // namespace

double shannon_entropy(const BasisProbabilities& p) {
    return -(plog2p(p.p_ll) + plog2p(p.p_lr) + plog2p(p.p_rl) + plog2p(p.p_rr));
}

double concurrence(const TwoQubitState& psi) {
    const auto& a = psi.amplitudes;
    return clamp01(2.0 * std::abs(a[0] * a[3] - a[1] * a[2]));
}

namespace {

// Signs of the coefficients' contributions to a_ll a_rr - a_lr a_rl when the
// state is expanded over the canonical Bell order (psi+, psi-, phi-, phi+).
constexpr std::array<double, 4> expansion_signs{-1.0, 1.0, -1.0, 1.0};

double expansion_oscillation(const std::array<double, 4>& c, const EigenSystem& es, double t_s) {
    double v = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const double w = 2.0 * expansion_signs[i] * expansion_signs[j] * c[i] * c[i] * c[j] * c[j];
            const double omega = 2.0 * (es.energies_eV[j] - es.energies_eV[i]) / hbar_eVs;
            v += w * std::cos(omega * t_s);
        }
    }
    return v;
}

} // namespace

double concurrence_sq_expansion(const std::array<double, 4>& c, const EigenSystem& es,
                                double t_s, double c1) {
    return c1 + expansion_oscillation(c, es, t_s);
}

double calibrate_c1(const std::array<double, 4>& c, const EigenSystem& es,
                    const std::vector<double>& t_s, const std::vector<double>& csq) {
    require_series(t_s, csq);
    double acc = 0;
    for (std::size_t k = 0; k < t_s.size(); ++k)
        acc += csq[k] - expansion_oscillation(c, es, t_s[k]);
    return acc / static_cast<double>(t_s.size());
}

double beta_coefficient(const std::array<double, 4>& c) {
    const double c1 = c[0] * c[0], c2 = c[1] * c[1], c3 = c[2] * c[2], c4 = c[3] * c[3];
    const double den = 2.0 * (c3 * c4 + c1 * c2);
    const double num = (c3 + c4) * (c1 + c2) - std::abs(c4 - c3) * std::abs(c2 - c1);
    if (den <= 1e-300 * std::max(1.0, num)) {
        std::ostringstream os;
        os << "beta is undefined: both cross terms c3^2 c4^2 and c1^2 c2^2 vanish for "
              "coefficients ("
           << c[0] << ", " << c[1] << ", " << c[2] << ", " << c[3] << ")";
        throw undefined_beta_error(os.str());
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// Envelope extraction
// ---------------------------------------------------------------------------

namespace {

// Monotone piecewise-cubic Hermite slopes (Fritsch-Carlson weighted harmonic
// mean, with the standard one-sided three-point rule at the ends).
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    std::vector<double> h(m - 1), del(m - 1), d(m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        h[i] = x[i + 1] - x[i];
        del[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (m == 2) {
        d[0] = d[1] = del[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (del[i - 1] * del[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    auto edge = [](double h0, double h1, double del0, double del1) {
        double dd = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (sgn(dd) != sgn(del0))
            dd = 0.0;
        else if (sgn(del0) != sgn(del1) && std::abs(dd) > 3.0 * std::abs(del0))
            dd = 3.0 * del0;
        return dd;
    };
    d[0] = edge(h[0], h[1], del[0], del[1]);
    d[m - 1] = edge(h[m - 2], h[m - 3], del[m - 2], del[m - 3]);
    return d;
}

// Evaluate the Hermite interpolant through (xk, yk) with slopes d at the
// sorted query points q; flat extrapolation outside [xk.front(), xk.back()].
std::vector<double> pchip_eval(const std::vector<double>& xk, const std::vector<double>& yk,
                               const std::vector<double>& d, const std::vector<double>& q) {
    std::vector<double> out(q.size());
    std::size_t seg = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double x = q[i];
        if (x <= xk.front()) {
            out[i] = yk.front();
            continue;
        }
        if (x >= xk.back()) {
            out[i] = yk.back();
            continue;
        }
        while (seg + 2 < xk.size() && x > xk[seg + 1]) ++seg;
        const double h = xk[seg + 1] - xk[seg];
        const double s = (x - xk[seg]) / h;
        const double s2 = s * s, s3 = s2 * s;
        out[i] = (2 * s3 - 3 * s2 + 1) * yk[seg] + (s3 - 2 * s2 + s) * h * d[seg] +
                 (-2 * s3 + 3 * s2) * yk[seg + 1] + (s3 - s2) * h * d[seg + 1];
    }
    return out;
}

} // namespace

Envelope envelope_extract(const std::vector<double>& t_s, const std::vector<double>& y) {
    require_series(t_s, y);
    const int n = static_cast<int>(y.size());

    std::vector<int> interior;
    for (int i = 1; i + 1 < n; ++i)
        if (y[i] > y[i - 1] && y[i] > y[i + 1]) interior.push_back(i);

    // A boundary sample qualifies only if it exceeds its neighbor and does
    // not sit below the nearest interior peak: a fast cycle cut off mid-rise
    // must not contribute a low spurious knot.
    std::vector<int> knots;
    if (y[0] > y[1] && (interior.empty() || y[0] >= y[interior.front()])) knots.push_back(0);
    knots.insert(knots.end(), interior.begin(), interior.end());
    if (y[n - 1] > y[n - 2] && (interior.empty() || y[n - 1] >= y[interior.back()]))
        knots.push_back(n - 1);

    Envelope env;
    env.knot_indices = knots;
    if (knots.size() < 2) {
        env.degenerate = true;
        env.values.assign(y.size(), *std::max_element(y.begin(), y.end()));
        return env;
    }

    std::vector<double> xk(knots.size()), yk(knots.size());
    for (std::size_t k = 0; k < knots.size(); ++k) {
        xk[k] = t_s[knots[k]];
        yk[k] = y[knots[k]];
    }
    env.values = pchip_eval(xk, yk, pchip_slopes(xk, yk), t_s);
    return env;
}

// ---------------------------------------------------------------------------
// Least-squares fits
// ---------------------------------------------------------------------------

namespace {

struct LineFit {
    double scale = 0;  // slope against the basis
    double offset = 0; // intercept
    double residual_rms = 0;
};

// OLS of y ~ scale * f + offset; throws degenerate_fit_error when f is
// (numerically) constant on the grid.
LineFit fit_line(const std::vector<double>& f, const std::vector<double>& y,
                 const char* basis_name) {
    const double n = static_cast<double>(f.size());
    double mf = 0, my = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        mf += f[i];
        my += y[i];
    }
    mf /= n;
    my /= n;
    double var_f = 0, cov = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        var_f += (f[i] - mf) * (f[i] - mf);
        cov += (f[i] - mf) * (y[i] - my);
    }
    if (var_f <= 1e-24 * n * std::max(1.0, mf * mf)) {
        std::ostringstream os;
        os << "least-squares basis '" << basis_name << "' is constant on the grid";
        throw degenerate_fit_error(os.str());
    }
    LineFit fit;
    fit.scale = cov / var_f;
    fit.offset = my - fit.scale * mf;
    double ss = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = y[i] - fit.scale * f[i] - fit.offset;
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

bool relatively_constant(const std::vector<double>& y) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double scale = std::max({std::abs(*lo), std::abs(*hi), 1e-300});
    return (*hi - *lo) <= 1e-9 * scale;
}

} // namespace

TwoCosineModel fit_two_cosine(const std::vector<double>& t_s, const std::vector<double>& y,
                              const std::array<double, 4>& c, const SpectralGaps& gaps) {
    require_series(t_s, y);
    TwoCosineModel model;
    model.w34 = 0.25 * c[2] * c[2] * c[3] * c[3];
    model.w12 = 0.25 * c[0] * c[0] * c[1] * c[1];
    model.omega_a = gaps.omega_a;
    model.omega_b = gaps.omega_b;

    std::vector<double> f(t_s.size());
    for (std::size_t i = 0; i < t_s.size(); ++i)
        f[i] = model.w34 * std::cos(2.0 * gaps.omega_a * t_s[i]) +
               model.w12 * std::cos(2.0 * gaps.omega_b * t_s[i]);

    const LineFit fit = fit_line(f, y, "two-cosine beat");
    model.a = fit.scale;
    model.c0 = fit.offset;
    model.residual_rms = fit.residual_rms;
    return model;
}

EnvelopeModel fit_envelope_model(const std::vector<double>& t_s, const std::vector<double>& env,
                                 const std::array<double, 4>& c, const SpectralGaps& gaps) {
    require_series(t_s, env);
    EnvelopeModel model;
    try {
        model.beta = beta_coefficient(c);
        model.beta_defined = true;
    } catch (const undefined_beta_error&) {
        model.degenerate = true;
        return model;
    }

    const double w34 = 0.25 * c[2] * c[2] * c[3] * c[3];
    const double w12 = 0.25 * c[0] * c[0] * c[1] * c[1];
    const double wsum = w34 + w12;
    if (wsum <= 0.0 || relatively_constant(env)) {
        model.degenerate = true;
        return model;
    }

    std::vector<double> g(t_s.size());
    for (std::size_t i = 0; i < t_s.size(); ++i)
        g[i] = (w34 * std::cos(2.0 * gaps.omega_a * t_s[i]) +
                w12 * std::cos(2.0 * gaps.omega_b * t_s[i])) /
               wsum;

    LineFit fit;
    try {
        fit = fit_line(g, env, "normalized beat");
    } catch (const degenerate_fit_error&) {
        model.degenerate = true;
        return model;
    }
    model.b = fit.scale / (1.0 + model.beta);
    model.alpha_const = fit.offset / fit.scale;
    model.residual_rms = fit.residual_rms;
    return model;
}

// ---------------------------------------------------------------------------
// Extrema and alignment
// ---------------------------------------------------------------------------

namespace {

// Prominence of extremum i on a series normalized to [0, 1]: walk out on each
// side until a strictly more extreme sample appears (or the series ends),
// tracking the deepest counter-excursion; the prominence is the smaller drop.
double prominence_at(const std::vector<double>& y, int i, bool is_max) {
    const int n = static_cast<int>(y.size());
    const double v = y[i];
    auto side = [&](int step) {
        double worst = v;
        for (int j = i + step; j >= 0 && j < n; j += step) {
            if (is_max ? y[j] > v : y[j] < v) break;
            worst = is_max ? std::min(worst, y[j]) : std::max(worst, y[j]);
        }
        return std::abs(v - worst);
    };
    return std::min(side(-1), side(+1));
}

std::vector<double> normalize01(const std::vector<double>& y) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double range = *hi - *lo;
    std::vector<double> out(y.size(), 0.0);
    if (range <= 0.0) return out;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = (y[i] - *lo) / range;
    return out;
}

} // namespace

std::vector<Extremum> extrema_times(const std::vector<double>& t_s, const std::vector<double>& y,
                                    double min_prominence) {
    require_series(t_s, y);
    const std::vector<double>* series = &y;
    std::vector<double> norm_y;
    if (min_prominence > 0.0) {
        norm_y = normalize01(y);
        series = &norm_y;
    }
    const auto& s = *series;
    const int n = static_cast<int>(s.size());

    std::vector<Extremum> out;
    for (int i = 1; i + 1 < n; ++i) {
        const bool is_max = s[i] > s[i - 1] && s[i] > s[i + 1];
        const bool is_min = s[i] < s[i - 1] && s[i] < s[i + 1];
        if (!is_max && !is_min) continue;
        if (min_prominence > 0.0 && prominence_at(s, i, is_max) < min_prominence) continue;

        // Quadratic refinement through the three samples around i.
        const double den = y[i - 1] - 2.0 * y[i] + y[i + 1];
        double off = 0.0;
        if (den != 0.0) off = std::clamp(0.5 * (y[i - 1] - y[i + 1]) / den, -0.5, 0.5);
        const double dt = 0.5 * (t_s[i + 1] - t_s[i - 1]);
        Extremum e;
        e.t_s = t_s[i] + off * dt;
        e.value = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * off;
        e.kind = is_max ? ExtremumKind::maximum : ExtremumKind::minimum;
        out.push_back(e);
    }
    return out;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw invalid_input_error("pearson needs two equal-length series of >= 2 samples");
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double va = 0, vb = 0, cov = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
        cov += (a[i] - ma) * (b[i] - mb);
    }
    if (va <= 0.0 || vb <= 0.0)
        throw numeric_error("pearson correlation is undefined for a constant series");
    return cov / std::sqrt(va * vb);
}

AlignmentScore alignment_score(const std::vector<double>& t_s, const std::vector<double>& a,
                               const std::vector<double>& b) {
    require_series(t_s, a);
    require_series(t_s, b);

    AlignmentScore score;
    score.a_constant = relatively_constant(a);
    score.b_constant = relatively_constant(b);

    if (score.a_constant && score.b_constant) {
        // Two flat series trivially align: zero offset, correlation undefined.
        score.offset_defined = true;
        return score;
    }
    if (score.a_constant || score.b_constant) return score;

    score.pearson = pearson(a, b);
    score.pearson_defined = true;

    constexpr double kProminence = 0.2;
    const auto ea = extrema_times(t_s, a, kProminence);
    const auto eb = extrema_times(t_s, b, kProminence);

    // Greedy globally-nearest matching of same-kind extrema.
    struct Cand {
        double dist;
        std::size_t i, j;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < ea.size(); ++i)
        for (std::size_t j = 0; j < eb.size(); ++j)
            if (ea[i].kind == eb[j].kind)
                cands.push_back({std::abs(ea[i].t_s - eb[j].t_s), i, j});
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.dist != y.dist) return x.dist < y.dist;
        if (x.i != y.i) return x.i < y.i;
        return x.j < y.j;
    });
    std::vector<bool> used_a(ea.size(), false), used_b(eb.size(), false);
    double max_off = 0;
    for (const auto& cand : cands) {
        if (used_a[cand.i] || used_b[cand.j]) continue;
        used_a[cand.i] = true;
        used_b[cand.j] = true;
        ++score.n_matched;
        max_off = std::max(max_off, cand.dist);
    }
    score.n_unmatched = static_cast<int>(ea.size() + eb.size()) - 2 * score.n_matched;
    if (score.n_matched > 0) {
        score.max_extremum_offset_s = max_off;
        score.offset_defined = true;
    }
    return score;
}

} // namespace qdw
