#pragma once

#include <string>
#include <vector>

#include "qdw/dynamics.hpp"
#include "qdw/hamiltonian.hpp"
#include "qdw/measures.hpp"

namespace qdw {

// A physical platform with its published parameter set. `quoted_timescale_s`
// is the timescale printed alongside the parameters in the source table;
// characteristic_timescale() recomputes it from the spectrum (the two
// disagree for some rows, see README).
struct ExperimentPreset {
    std::string name;
    HamiltonianParams params;
    double quoted_timescale_s;
    std::string basis_note;
};

const ExperimentPreset& preset(const std::string& name);
const std::vector<ExperimentPreset>& all_presets();

// Half beat period h / (2 (E4 - E3)) of the slow coherent oscillation.
// Throws infinite_timescale_error when E4 - E3 vanishes (delta = 0).
double characteristic_timescale(const HamiltonianParams& p);

// One reproducible scenario: a preset, an initial state, and the time window
// expressed in characteristic timescales.
struct FigureScenario {
    std::string id;
    std::string description;
    ExperimentPreset preset;
    TwoQubitState initial_state;
    double window_timescales;
};

FigureScenario figure_scenario(const std::string& id);
std::vector<std::string> figure_ids();

// Fitted models for one trajectory: the two-cosine entropy fit (a, c0), the
// envelope model (b, alpha, beta) and the six-cosine calibration constant c1.
struct FitReport {
    TwoCosineModel two_cosine;
    bool two_cosine_defined = false;
    EnvelopeModel envelope;
    double expansion_max_err = 0; // max |six-cosine expansion - sampled |C|^2|
};

struct AlignmentReport {
    AlignmentScore exact;
    AlignmentScore bell_limit_ideal;
    double half_fast_period_s = 0; // pi hbar / (E3 - E1)
};

// A fully evaluated scenario: the exact trajectory, the idealized Bell-limit
// trajectory on the same grid (canonical Bell vectors, exact energies), fit
// reports for both, and entropy/envelope alignment for both.
struct FigureRun {
    FigureScenario scenario;
    EigenSystem exact_system;
    EigenSystem ideal_system;
    Trajectory exact;
    Trajectory ideal;
    std::array<double, 4> coefficients; // real expansion coefficients (ideal basis)
    FitReport fits_exact;
    FitReport fits_ideal;
    AlignmentReport alignment;
};

FigureRun run_figure(const FigureScenario& scenario, int threads = 1);

// Write the bundle for a run into `out_dir`: trajectory.csv,
// bell_limit_ideal.csv, fits.json, alignment.json and optionally plot.svg.
// All writes are atomic (temp file + rename).
void write_figure_bundle(const FigureRun& run, const std::string& out_dir, bool svg);

// One row of the interaction-ratio sweep at fixed delta: Bell fidelities of
// the four eigenvectors and the two slow spectral gaps.
struct SweepRow {
    double ratio = 0; // u / delta
    double f1 = 0, f2 = 0, f3 = 0, f4 = 0;
    double gap_slow_eV = 0; // E4 - E3
    double gap_2u_eV = 0;   // E3 - E2
};

std::vector<SweepRow> ratio_sweep(double ratio_min, double ratio_max, int n_points,
                                  double delta_eV);

} // namespace qdw
