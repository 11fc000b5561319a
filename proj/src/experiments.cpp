#include "qdw/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "qdw/constants.hpp"
#include "qdw/errors.hpp"
#include "qdw/io.hpp"
#include "qdw/svg.hpp"

namespace qdw {

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;

std::vector<ExperimentPreset> make_presets() {
    return {
        {"optical-trap", HamiltonianParams(0.0, 2.66e-13, 2.7e-12), 124e-3,
         "two neutral 6Li atoms in an optically created double well (positional basis)"},
        {"quantum-magnet", HamiltonianParams(0.0, 17.5e-12, 91.1e-12), 0.31e-3,
         "two 25Mg+ ions, hyperfine ground states as spin-1/2 (spin basis)"},
        {"semiconductor-dqd", HamiltonianParams(0.0, 6.25e-6, 25e-6), 10.1e-9,
         "two electrons in separate double quantum dots (positional basis)"},
    };
}

} // namespace

const std::vector<ExperimentPreset>& all_presets() {
    static const std::vector<ExperimentPreset> presets = make_presets();
    return presets;
}

const ExperimentPreset& preset(const std::string& name) {
    for (const auto& p : all_presets())
        if (p.name == name) return p;
    std::ostringstream os;
    os << "unknown preset '" << name << "'; valid names:";
    for (const auto& p : all_presets()) os << ' ' << p.name;
    throw lookup_error(os.str());
}

double characteristic_timescale(const HamiltonianParams& p) {
    const EigenSystem es = closed_form_spectrum(p);
    const double gap = es.energies_eV[3] - es.energies_eV[2];
    if (gap <= 0)
        throw infinite_timescale_error(
            "the slow gap E4 - E3 vanishes (delta = 0), the beat timescale is infinite");
    return planck_eVs / (2.0 * gap);
}

namespace {

TwoQubitState make_state(std::initializer_list<cplx> amps) {
    cvec4 v{};
    int i = 0;
    for (const cplx& a : amps) v[i++] = a;
    return TwoQubitState::normalized(v);
}

std::vector<FigureScenario> make_scenarios() {
    const double s3 = 1.0 / std::sqrt(3.0);
    std::vector<FigureScenario> out;
    out.push_back({"3a", "|LL>", preset("optical-trap"),
                   make_state({1.0, 0.0, 0.0, 0.0}), 2.0});
    out.push_back({"3b", "(|LL> + |LR>)/sqrt(2)", preset("optical-trap"),
                   make_state({inv_sqrt2, inv_sqrt2, 0.0, 0.0}), 2.0});
    out.push_back({"3c", "(|LL> + |RR> + |LR>)/sqrt(3)", preset("optical-trap"),
                   make_state({s3, s3, 0.0, s3}), 2.0});
    out.push_back({"3d", "(|LL> + |RR> + |LR> + |RL>)/2", preset("optical-trap"),
                   make_state({0.5, 0.5, 0.5, 0.5}), 2.0});
    out.push_back({"4a", "(|LL> + |RR>)/sqrt(2)", preset("optical-trap"),
                   make_state({inv_sqrt2, 0.0, 0.0, inv_sqrt2}), 4.0});
    out.push_back({"4b", "(|LL> + |RR>)/sqrt(2)", preset("quantum-magnet"),
                   make_state({inv_sqrt2, 0.0, 0.0, inv_sqrt2}), 4.0});
    out.push_back({"4c", "(|LL> + |RR>)/sqrt(2)", preset("semiconductor-dqd"),
                   make_state({inv_sqrt2, 0.0, 0.0, inv_sqrt2}), 4.0});
    return out;
}

} // namespace

std::vector<std::string> figure_ids() {
    std::vector<std::string> ids;
    for (const auto& s : make_scenarios()) ids.push_back(s.id);
    return ids;
}

FigureScenario figure_scenario(const std::string& id) {
    for (const auto& s : make_scenarios())
        if (s.id == id) return s;
    std::ostringstream os;
    os << "unknown figure id '" << id << "'; valid ids:";
    for (const auto& s : make_scenarios()) os << ' ' << s.id;
    throw lookup_error(os.str());
}

namespace {

FitReport make_fit_report(const std::vector<double>& t, const Trajectory& traj,
                          const std::array<double, 4>& c, const EigenSystem& es) {
    const SpectralGaps gaps = spectral_gaps(es);
    FitReport report;
    try {
        report.two_cosine = fit_two_cosine(t, traj.entropy_bits, c, gaps);
        report.two_cosine_defined = true;
    } catch (const degenerate_fit_error&) {
        report.two_cosine_defined = false;
    }
    report.envelope = fit_envelope_model(t, traj.envelope, c, gaps);
    report.envelope.c1 = calibrate_c1(c, es, t, traj.concurrence_sq);
    double max_err = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double model = concurrence_sq_expansion(c, es, t[i], report.envelope.c1);
        max_err = std::max(max_err, std::abs(model - traj.concurrence_sq[i]));
    }
    report.expansion_max_err = max_err;
    return report;
}

} // namespace

FigureRun run_figure(const FigureScenario& scenario, int threads) {
    const HamiltonianParams& p = scenario.preset.params;

    FigureRun run{scenario, {}, {}, {}, {}, {}, {}, {}, {}};
    run.exact_system = closed_form_spectrum(p);
    run.ideal_system = bell_limit_system(p);

    const double t_char = characteristic_timescale(p);
    const TimeGrid grid = TimeGrid::dense(run.exact_system, scenario.window_timescales * t_char);

    run.exact = compute_trajectory(scenario.initial_state, run.exact_system, grid, threads);
    run.ideal = compute_trajectory(scenario.initial_state, run.ideal_system, grid, threads);

    std::vector<double> t(grid.n_samples);
    for (int i = 0; i < grid.n_samples; ++i) t[i] = grid.time(i);
    run.exact.envelope = envelope_extract(t, run.exact.concurrence_sq).values;
    run.ideal.envelope = envelope_extract(t, run.ideal.concurrence_sq).values;

    run.coefficients = real_coefficients(expand_initial_state(scenario.initial_state, run.ideal_system));
    const std::array<double, 4> c_exact =
        real_coefficients(expand_initial_state(scenario.initial_state, run.exact_system));

    run.fits_exact = make_fit_report(t, run.exact, c_exact, run.exact_system);
    run.fits_ideal = make_fit_report(t, run.ideal, run.coefficients, run.ideal_system);

    run.alignment.exact = alignment_score(t, run.exact.entropy_bits, run.exact.envelope);
    run.alignment.bell_limit_ideal = alignment_score(t, run.ideal.entropy_bits, run.ideal.envelope);
    run.alignment.half_fast_period_s =
        std::numbers::pi * hbar_eVs / (run.exact_system.energies_eV[2] - run.exact_system.energies_eV[0]);
    return run;
}

namespace {

using ordered_json = nlohmann::ordered_json;

// null for values that are not finite (undefined fits).
ordered_json num_or_null(double v, bool defined = true) {
    if (!defined || !std::isfinite(v)) return nullptr;
    return v;
}

ordered_json fit_json(const FitReport& r) {
    ordered_json j;
    j["A"] = num_or_null(r.two_cosine.a, r.two_cosine_defined);
    j["C0"] = num_or_null(r.two_cosine.c0, r.two_cosine_defined);
    j["B"] = num_or_null(r.envelope.b, !r.envelope.degenerate);
    j["alpha"] = num_or_null(r.envelope.alpha_const, !r.envelope.degenerate);
    j["beta"] = num_or_null(r.envelope.beta, r.envelope.beta_defined);
    j["C1"] = r.envelope.c1;
    j["residual_rms"] = num_or_null(r.two_cosine.residual_rms, r.two_cosine_defined);
    j["envelope_residual_rms"] = num_or_null(r.envelope.residual_rms, !r.envelope.degenerate);
    j["expansion_max_err"] = r.expansion_max_err;
    j["two_cosine_defined"] = r.two_cosine_defined;
    j["envelope_model_degenerate"] = r.envelope.degenerate;
    j["beta_defined"] = r.envelope.beta_defined;
    return j;
}

ordered_json alignment_json_block(const AlignmentScore& s) {
    ordered_json j;
    j["pearson"] = num_or_null(s.pearson, s.pearson_defined);
    j["pearson_defined"] = s.pearson_defined;
    j["max_extremum_offset_s"] = num_or_null(s.max_extremum_offset_s, s.offset_defined);
    j["offset_defined"] = s.offset_defined;
    j["n_matched"] = s.n_matched;
    j["n_unmatched"] = s.n_unmatched;
    j["entropy_constant"] = s.a_constant;
    j["envelope_constant"] = s.b_constant;
    return j;
}

} // namespace

void write_figure_bundle(const FigureRun& run, const std::string& out_dir, bool svg) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);

    write_text_atomic((dir / "trajectory.csv").string(), trajectory_csv(run.exact));
    write_text_atomic((dir / "bell_limit_ideal.csv").string(), trajectory_csv(run.ideal));

    ordered_json fits = fit_json(run.fits_exact);
    fits["bell_limit_ideal"] = fit_json(run.fits_ideal);
    ordered_json meta;
    meta["figure"] = run.scenario.id;
    meta["preset"] = run.scenario.preset.name;
    meta["initial_state"] = run.scenario.description;
    meta["coefficients"] = run.coefficients;
    fits["scenario"] = meta;
    write_text_atomic((dir / "fits.json").string(), fits.dump(2) + "\n");

    ordered_json align;
    align["half_fast_period_s"] = run.alignment.half_fast_period_s;
    align["exact"] = alignment_json_block(run.alignment.exact);
    align["bell_limit_ideal"] = alignment_json_block(run.alignment.bell_limit_ideal);
    write_text_atomic((dir / "alignment.json").string(), align.dump(2) + "\n");

    if (svg) {
        std::vector<double> t(run.exact.grid.n_samples);
        for (int i = 0; i < run.exact.grid.n_samples; ++i) t[i] = run.exact.grid.time(i);
        const std::vector<SvgSeries> series{
            {"entropy (bits)", "black", run.exact.entropy_bits},
            {"|C|^2", "#999999", run.exact.concurrence_sq},
            {"|C|^2 envelope", "#cc0000", run.exact.envelope},
        };
        write_text_atomic((dir / "plot.svg").string(),
                          svg_line_chart("figure " + run.scenario.id + " (" +
                                             run.scenario.preset.name + ")",
                                         t, series));
    }
}

std::vector<SweepRow> ratio_sweep(double ratio_min, double ratio_max, int n_points,
                                  double delta_eV) {
    if (!(delta_eV > 0)) throw invalid_input_error("ratio sweep needs delta > 0");
    if (n_points < 1) throw invalid_input_error("ratio sweep needs at least 1 point");
    if (!std::isfinite(ratio_min) || !std::isfinite(ratio_max) || ratio_max < ratio_min)
        throw invalid_input_error("ratio sweep bounds must be finite with max >= min");

    std::vector<SweepRow> rows;
    rows.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double ratio =
            n_points == 1 ? ratio_min
                          : ratio_min + (ratio_max - ratio_min) * i / double(n_points - 1);
        const EigenSystem es = closed_form_spectrum(HamiltonianParams(0.0, delta_eV, ratio * delta_eV));
        const auto f = bell_fidelity(es);
        SweepRow row;
        row.ratio = ratio;
        row.f1 = f[0];
        row.f2 = f[1];
        row.f3 = f[2];
        row.f4 = f[3];
        row.gap_slow_eV = es.energies_eV[3] - es.energies_eV[2];
        row.gap_2u_eV = es.energies_eV[2] - es.energies_eV[1];
        rows.push_back(row);
    }
    return rows;
}

} // namespace qdw
