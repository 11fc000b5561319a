// Python bindings for the double-well simulator core. Exposes the model
// parameters, eigensolvers, time evolution, entanglement measures and the
// packaged figure scenarios; container and complex conversions come from
// pybind11/stl.h so everything crosses the boundary as plain Python objects.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdw/constants.hpp"
#include "qdw/dynamics.hpp"
#include "qdw/errors.hpp"
#include "qdw/experiments.hpp"
#include "qdw/hamiltonian.hpp"
#include "qdw/io.hpp"
#include "qdw/measures.hpp"
#include "qdw/state_spec.hpp"

namespace py = pybind11;
using namespace qdw;

PYBIND11_MODULE(_qdw, m) {
    m.doc() = "Coherent dynamics of two interacting particles in a double well";

    m.attr("hbar_eVs") = hbar_eVs;
    m.attr("planck_eVs") = planck_eVs;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const lookup_error& e) {
            PyErr_SetString(PyExc_KeyError, e.what());
        } catch (const parse_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const invalid_input_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    py::class_<HamiltonianParams>(m, "HamiltonianParams")
        .def(py::init<double, double, double>(), py::arg("epsilon0_eV"), py::arg("delta_eV"),
             py::arg("u_eV"))
        .def_readonly("epsilon0_eV", &HamiltonianParams::epsilon0_eV)
        .def_readonly("delta_eV", &HamiltonianParams::delta_eV)
        .def_readonly("u_eV", &HamiltonianParams::u_eV)
        .def("__repr__", [](const HamiltonianParams& p) {
            return "HamiltonianParams(epsilon0_eV=" + std::to_string(p.epsilon0_eV) +
                   ", delta_eV=" + std::to_string(p.delta_eV) +
                   ", u_eV=" + std::to_string(p.u_eV) + ")";
        });

    py::class_<EigenSystem>(m, "EigenSystem")
        .def_readonly("energies_eV", &EigenSystem::energies_eV)
        .def_readonly("vectors", &EigenSystem::vectors);

    py::class_<SpectralGaps>(m, "SpectralGaps")
        .def_readonly("omega_a", &SpectralGaps::omega_a)
        .def_readonly("omega_b", &SpectralGaps::omega_b)
        .def_readonly("omega_fast", &SpectralGaps::omega_fast)
        .def_readonly("omega_42", &SpectralGaps::omega_42)
        .def_readonly("omega_32", &SpectralGaps::omega_32)
        .def_readonly("omega_41", &SpectralGaps::omega_41);

    py::class_<TwoQubitState>(m, "TwoQubitState")
        .def(py::init<const cvec4&>(), py::arg("amplitudes"))
        .def_static("normalized", &TwoQubitState::normalized, py::arg("amplitudes"))
        .def_readonly("amplitudes", &TwoQubitState::amplitudes);

    py::class_<ExpansionCoefficients>(m, "ExpansionCoefficients")
        .def_readonly("c", &ExpansionCoefficients::c);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<double, double, int>(), py::arg("t_start_s"), py::arg("t_end_s"),
             py::arg("n_samples"))
        .def_static("dense", &TimeGrid::dense, py::arg("eigensystem"), py::arg("t_end_s"),
                    py::arg("min_samples") = 1001)
        .def_readonly("t_start_s", &TimeGrid::t_start_s)
        .def_readonly("t_end_s", &TimeGrid::t_end_s)
        .def_readonly("n_samples", &TimeGrid::n_samples)
        .def("time", &TimeGrid::time, py::arg("i"))
        .def("times", [](const TimeGrid& g) {
            std::vector<double> t(static_cast<std::size_t>(g.n_samples));
            for (int i = 0; i < g.n_samples; ++i) t[static_cast<std::size_t>(i)] = g.time(i);
            return t;
        });

    py::class_<BasisProbabilities>(m, "BasisProbabilities")
        .def(py::init([](double p_ll, double p_lr, double p_rl, double p_rr) {
                 return BasisProbabilities{p_ll, p_lr, p_rl, p_rr};
             }),
             py::arg("p_ll"), py::arg("p_lr"), py::arg("p_rl"), py::arg("p_rr"))
        .def_readonly("p_ll", &BasisProbabilities::p_ll)
        .def_readonly("p_lr", &BasisProbabilities::p_lr)
        .def_readonly("p_rl", &BasisProbabilities::p_rl)
        .def_readonly("p_rr", &BasisProbabilities::p_rr);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("grid", &Trajectory::grid)
        .def_readonly("probabilities", &Trajectory::probabilities)
        .def_readonly("entropy_bits", &Trajectory::entropy_bits)
        .def_readonly("concurrence", &Trajectory::concurrence)
        .def_readonly("concurrence_sq", &Trajectory::concurrence_sq)
        .def_readonly("envelope", &Trajectory::envelope);

    py::class_<Envelope>(m, "Envelope")
        .def_readonly("values", &Envelope::values)
        .def_readonly("knot_indices", &Envelope::knot_indices)
        .def_readonly("degenerate", &Envelope::degenerate);

    py::class_<AlignmentScore>(m, "AlignmentScore")
        .def_readonly("pearson", &AlignmentScore::pearson)
        .def_readonly("pearson_defined", &AlignmentScore::pearson_defined)
        .def_readonly("max_extremum_offset_s", &AlignmentScore::max_extremum_offset_s)
        .def_readonly("offset_defined", &AlignmentScore::offset_defined)
        .def_readonly("n_matched", &AlignmentScore::n_matched)
        .def_readonly("n_unmatched", &AlignmentScore::n_unmatched);

    py::class_<ExperimentPreset>(m, "ExperimentPreset")
        .def_readonly("name", &ExperimentPreset::name)
        .def_readonly("params", &ExperimentPreset::params)
        .def_readonly("quoted_timescale_s", &ExperimentPreset::quoted_timescale_s)
        .def_readonly("basis_note", &ExperimentPreset::basis_note);

    py::class_<FigureScenario>(m, "FigureScenario")
        .def_readonly("id", &FigureScenario::id)
        .def_readonly("description", &FigureScenario::description)
        .def_readonly("preset", &FigureScenario::preset)
        .def_readonly("initial_state", &FigureScenario::initial_state)
        .def_readonly("window_timescales", &FigureScenario::window_timescales);

    py::class_<AlignmentReport>(m, "AlignmentReport")
        .def_readonly("exact", &AlignmentReport::exact)
        .def_readonly("bell_limit_ideal", &AlignmentReport::bell_limit_ideal)
        .def_readonly("half_fast_period_s", &AlignmentReport::half_fast_period_s);

    py::class_<FigureRun>(m, "FigureRun")
        .def_readonly("scenario", &FigureRun::scenario)
        .def_readonly("exact_system", &FigureRun::exact_system)
        .def_readonly("ideal_system", &FigureRun::ideal_system)
        .def_readonly("exact", &FigureRun::exact)
        .def_readonly("ideal", &FigureRun::ideal)
        .def_readonly("coefficients", &FigureRun::coefficients)
        .def_readonly("alignment", &FigureRun::alignment);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("ratio", &SweepRow::ratio)
        .def_readonly("f1", &SweepRow::f1)
        .def_readonly("f2", &SweepRow::f2)
        .def_readonly("f3", &SweepRow::f3)
        .def_readonly("f4", &SweepRow::f4)
        .def_readonly("gap_slow_eV", &SweepRow::gap_slow_eV)
        .def_readonly("gap_2u_eV", &SweepRow::gap_2u_eV);

    m.def("closed_form_spectrum", &closed_form_spectrum, py::arg("params"));
    m.def(
        "diagonalize",
        [](const HamiltonianParams& p) { return diagonalize(build_hamiltonian(p)); },
        py::arg("params"), "Numerical eigensystem via cyclic Jacobi.");
    m.def("bell_limit_system", &bell_limit_system, py::arg("params"));
    m.def("bell_fidelity", &bell_fidelity, py::arg("eigensystem"));
    m.def("spectral_gaps", &spectral_gaps, py::arg("eigensystem"));
    m.def("characteristic_timescale", &characteristic_timescale, py::arg("params"));

    m.def("parse_state_spec", &parse_state_spec, py::arg("spec"),
          "Parse a state like 'LL + 0.5i RR' into a normalized TwoQubitState.");
    m.def("expand_initial_state", &expand_initial_state, py::arg("psi0"), py::arg("eigensystem"));
    m.def("evolve", &evolve, py::arg("coefficients"), py::arg("eigensystem"), py::arg("t_s"));
    m.def("basis_probabilities", &basis_probabilities, py::arg("psi"));
    m.def("shannon_entropy", &shannon_entropy, py::arg("probabilities"));
    m.def("concurrence", &concurrence, py::arg("psi"));
    m.def("beta_coefficient", &beta_coefficient, py::arg("c"));
    m.def("envelope_extract", &envelope_extract, py::arg("t_s"), py::arg("y"));
    m.def("alignment_score", &alignment_score, py::arg("t_s"), py::arg("a"), py::arg("b"));

    m.def(
        "compute_trajectory",
        [](const TwoQubitState& psi0, const EigenSystem& es, const TimeGrid& grid, int threads) {
            return compute_trajectory(psi0, es, grid, threads);
        },
        py::arg("psi0"), py::arg("eigensystem"), py::arg("grid"), py::arg("threads") = 1);
    m.def(
        "compute_trajectory",
        [](const TwoQubitState& psi0, const HamiltonianParams& p, const TimeGrid& grid,
           int threads) { return compute_trajectory(psi0, p, grid, threads); },
        py::arg("psi0"), py::arg("params"), py::arg("grid"), py::arg("threads") = 1);

    m.def("preset", [](const std::string& name) { return preset(name); }, py::arg("name"));
    m.def("all_presets", []() { return all_presets(); });
    m.def("figure_ids", &figure_ids);
    m.def("figure_scenario", &figure_scenario, py::arg("id"));
    m.def("run_figure", &run_figure, py::arg("scenario"), py::arg("threads") = 1);
    m.def("write_figure_bundle", &write_figure_bundle, py::arg("run"), py::arg("out_dir"),
          py::arg("svg") = false);
    m.def("ratio_sweep", &ratio_sweep, py::arg("ratio_min"), py::arg("ratio_max"),
          py::arg("n_points"), py::arg("delta_eV"));
    m.def("trajectory_csv", &trajectory_csv, py::arg("trajectory"));
}
