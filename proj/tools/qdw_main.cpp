// Command-line interface for the double-well two-particle dynamics library:
// eigensystems, trajectories, interaction-ratio sweeps, reproducible figure
// bundles and the preset comparison table.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qdw/dynamics.hpp"
#include "qdw/errors.hpp"
#include "qdw/experiments.hpp"
#include "qdw/hamiltonian.hpp"
#include "qdw/io.hpp"
#include "qdw/measures.hpp"
#include "qdw/state_spec.hpp"
#include "qdw/svg.hpp"

namespace {

using qdw::cplx;
using ordered_json = nlohmann::ordered_json;

// Options shared by the subcommands, with presence tracking so that a JSON
// config file can fill anything the command line left unset.
struct Opts {
    std::string preset_name;
    double delta_eV = 0, u_eV = 0, epsilon0_eV = 0;
    std::string state = "LL";
    double t_max_s = 0;
    int samples = 0;
    std::string out;
    std::string figure;
    bool svg = false;
    int threads = 1;
    std::string config_path;
    double ratio_min = 0, ratio_max = 20;
    int points = 201;
    bool as_json = false;

    bool has_preset = false, has_delta = false, has_u = false, has_eps0 = false;
    bool has_state = false, has_tmax = false, has_samples = false, has_out = false;
    bool has_svg = false, has_threads = false;
};

void add_param_options(CLI::App* cmd, Opts& o) {
    cmd->add_option("--preset", o.preset_name,
                    "named parameter set (optical-trap, quantum-magnet, semiconductor-dqd)");
    cmd->add_option("--delta-ev", o.delta_eV, "tunneling amplitude delta in eV");
    cmd->add_option("--u-ev", o.u_eV, "contact interaction u in eV");
    cmd->add_option("--epsilon0-ev", o.epsilon0_eV, "on-site energy epsilon0 in eV (default 0)");
    cmd->add_option("--config", o.config_path, "JSON file supplying defaults for unset options");
}

void note_presence(CLI::App* cmd, Opts& o) {
    auto seen = [&](const char* name) {
        const CLI::Option* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    o.has_preset = seen("--preset");
    o.has_delta = seen("--delta-ev");
    o.has_u = seen("--u-ev");
    o.has_eps0 = seen("--epsilon0-ev");
    o.has_state = seen("--state");
    o.has_tmax = seen("--t-max-s");
    o.has_samples = seen("--samples");
    o.has_out = seen("--out");
    o.has_svg = seen("--svg");
    o.has_threads = seen("--threads");
}

void apply_config(Opts& o) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw qdw::invalid_input_error("cannot open config file '" + o.config_path + "'");
    nlohmann::json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::exception& e) {
        throw qdw::invalid_input_error("malformed config '" + o.config_path + "': " + e.what());
    }
    if (!cfg.is_object())
        throw qdw::invalid_input_error("config '" + o.config_path + "' must be a JSON object");

    auto take = [&](const char* key, auto& target, bool& has) {
        if (!has && cfg.contains(key)) {
            try {
                target = cfg.at(key).get<std::decay_t<decltype(target)>>();
            } catch (const nlohmann::json::exception& e) {
                throw qdw::invalid_input_error(std::string("config key '") + key + "': " + e.what());
            }
            has = true;
        }
    };
    take("preset", o.preset_name, o.has_preset);
    take("delta_ev", o.delta_eV, o.has_delta);
    take("u_ev", o.u_eV, o.has_u);
    take("epsilon0_ev", o.epsilon0_eV, o.has_eps0);
    take("state", o.state, o.has_state);
    take("t_max_s", o.t_max_s, o.has_tmax);
    take("samples", o.samples, o.has_samples);
    take("out", o.out, o.has_out);
    take("svg", o.svg, o.has_svg);
    take("threads", o.threads, o.has_threads);
}

qdw::HamiltonianParams resolve_params(const Opts& o) {
    const bool explicit_params = o.has_delta || o.has_u || o.has_eps0;
    if (o.has_preset && explicit_params)
        throw qdw::invalid_input_error(
            "give either --preset or explicit --delta-ev/--u-ev/--epsilon0-ev, not both");
    if (o.has_preset) return qdw::preset(o.preset_name).params;
    if (!o.has_delta || !o.has_u)
        throw qdw::invalid_input_error("need --preset, or both --delta-ev and --u-ev");
    return {o.epsilon0_eV, o.delta_eV, o.u_eV};
}

ordered_json eigensystem_json(const qdw::HamiltonianParams& p, const qdw::EigenSystem& es) {
    ordered_json j;
    j["params_eV"] = {{"epsilon0", p.epsilon0_eV}, {"delta", p.delta_eV}, {"u", p.u_eV}};
    j["energies_eV"] = es.energies_eV;
    ordered_json vectors = ordered_json::array();
    for (const auto& v : es.vectors) {
        ordered_json row = ordered_json::array();
        for (const cplx& a : v) row.push_back({{"re", a.real()}, {"im", a.imag()}});
        vectors.push_back(row);
    }
    j["vectors"] = vectors;
    const qdw::SpectralGaps g = qdw::spectral_gaps(es);
    j["gaps_rad_per_s"] = {{"omega_a", g.omega_a},   {"omega_b", g.omega_b},
                           {"omega_fast", g.omega_fast}, {"omega_42", g.omega_42},
                           {"omega_32", g.omega_32}, {"omega_41", g.omega_41}};
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        qdw::write_text_atomic(out_path, text);
}

int cmd_eig(Opts& o) {
    apply_config(o);
    const qdw::HamiltonianParams p = resolve_params(o);
    const qdw::EigenSystem es = qdw::closed_form_spectrum(p);
    emit(eigensystem_json(p, es).dump(2) + "\n", o.has_out ? o.out : "");
    return 0;
}

int cmd_evolve(Opts& o) {
    apply_config(o);
    const qdw::HamiltonianParams p = resolve_params(o);
    const qdw::EigenSystem es = qdw::closed_form_spectrum(p);
    const qdw::TwoQubitState psi0 = qdw::parse_state_spec(o.state);

    const double t_max = o.has_tmax ? o.t_max_s : 2.0 * qdw::characteristic_timescale(p);
    const qdw::TimeGrid grid =
        o.has_samples ? qdw::TimeGrid(0.0, t_max, o.samples) : qdw::TimeGrid::dense(es, t_max);

    qdw::Trajectory traj = qdw::compute_trajectory(psi0, es, grid, o.threads);
    std::vector<double> t(grid.n_samples);
    for (int i = 0; i < grid.n_samples; ++i) t[i] = grid.time(i);
    traj.envelope = qdw::envelope_extract(t, traj.concurrence_sq).values;

    const std::filesystem::path dir(o.has_out ? o.out : ".");
    const std::string csv_path = (dir / "trajectory.csv").string();
    qdw::write_text_atomic(csv_path, qdw::trajectory_csv(traj));
    if (o.svg) {
        const std::vector<qdw::SvgSeries> series{
            {"entropy (bits)", "black", traj.entropy_bits},
            {"|C|^2", "#999999", traj.concurrence_sq},
            {"|C|^2 envelope", "#cc0000", traj.envelope},
        };
        qdw::write_text_atomic((dir / "plot.svg").string(),
                               qdw::svg_line_chart("evolution of " + o.state, t, series));
    }
    std::cout << "wrote " << csv_path << " (" << grid.n_samples << " samples over "
              << qdw::fmt17(t_max) << " s)\n";
    return 0;
}

int cmd_sweep(Opts& o) {
    apply_config(o);
    const double delta = o.has_delta ? o.delta_eV : 1.0;
    const auto rows = qdw::ratio_sweep(o.ratio_min, o.ratio_max, o.points, delta);
    std::string csv = "ratio,f1,f2,f3,f4,gap_slow_eV,gap_2U_eV\n";
    for (const auto& r : rows) {
        csv += qdw::fmt17(r.ratio) + ',' + qdw::fmt17(r.f1) + ',' + qdw::fmt17(r.f2) + ',' +
               qdw::fmt17(r.f3) + ',' + qdw::fmt17(r.f4) + ',' + qdw::fmt17(r.gap_slow_eV) + ',' +
               qdw::fmt17(r.gap_2u_eV) + '\n';
    }
    if (o.has_out) {
        const std::string path = (std::filesystem::path(o.out) / "sweep.csv").string();
        qdw::write_text_atomic(path, csv);
        std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
    } else {
        std::cout << csv;
    }
    return 0;
}

int cmd_reproduce(Opts& o) {
    apply_config(o);
    const qdw::FigureScenario scenario = qdw::figure_scenario(o.figure);
    const std::string out_dir = o.has_out ? o.out : "figure_" + scenario.id;
    const qdw::FigureRun run = qdw::run_figure(scenario, o.threads);
    qdw::write_figure_bundle(run, out_dir, o.svg);
    std::cout << "figure " << scenario.id << ": preset " << scenario.preset.name << ", state "
              << scenario.description << "\n"
              << "  samples: " << run.exact.grid.n_samples << " over "
              << qdw::fmt17(run.exact.grid.t_end_s) << " s\n"
              << "  wrote " << out_dir << "/{trajectory.csv, bell_limit_ideal.csv, fits.json, "
              << "alignment.json" << (o.svg ? ", plot.svg" : "") << "}\n";
    return 0;
}

int cmd_table1(Opts& o) {
    apply_config(o);
    if (o.as_json) {
        ordered_json rows = ordered_json::array();
        for (const auto& p : qdw::all_presets()) {
            ordered_json row;
            row["preset"] = p.name;
            row["u_eV"] = p.params.u_eV;
            row["delta_eV"] = p.params.delta_eV;
            row["u_over_delta"] = p.params.u_eV / p.params.delta_eV;
            row["timescale_computed_s"] = qdw::characteristic_timescale(p.params);
            row["timescale_quoted_s"] = p.quoted_timescale_s;
            rows.push_back(row);
        }
        emit(rows.dump(2) + "\n", o.has_out ? o.out : "");
        return 0;
    }
    std::ostringstream os;
    os << std::left << std::setw(18) << "preset" << std::right << std::setw(12) << "u_eV"
       << std::setw(12) << "delta_eV" << std::setw(10) << "u/delta" << std::setw(16)
       << "computed_s" << std::setw(14) << "quoted_s" << '\n';
    os << std::setprecision(4);
    for (const auto& p : qdw::all_presets()) {
        os << std::left << std::setw(18) << p.name << std::right << std::setw(12)
           << p.params.u_eV << std::setw(12) << p.params.delta_eV << std::setw(10)
           << p.params.u_eV / p.params.delta_eV << std::setw(16)
           << qdw::characteristic_timescale(p.params) << std::setw(14) << p.quoted_timescale_s
           << '\n';
    }
    emit(os.str(), o.has_out ? o.out : "");
    return 0;
}

void report_error(bool json_errors, const std::string& code, const std::string& message) {
    if (json_errors) {
        ordered_json j;
        j["error"] = code;
        j["message"] = message;
        std::cerr << j.dump() << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent dynamics of two interacting particles in a quantum double well"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "report errors as JSON objects on stderr");

    Opts eig_o, evolve_o, sweep_o, repro_o, table_o;

    CLI::App* eig = app.add_subcommand("eig", "closed-form eigensystem as JSON");
    add_param_options(eig, eig_o);
    eig->add_option("--out", eig_o.out, "output file (default: stdout)");

    CLI::App* evolve = app.add_subcommand("evolve", "sample a trajectory to trajectory.csv");
    add_param_options(evolve, evolve_o);
    evolve->add_option("--state", evolve_o.state, "initial state, e.g. \"LL\" or \"0.5 LL - 0.5i RR\"");
    evolve->add_option("--t-max-s", evolve_o.t_max_s,
                       "time window in seconds (default: two beat half-periods)");
    evolve->add_option("--samples", evolve_o.samples,
                       "sample count (default: auto, >= 40 per fastest period)");
    evolve->add_option("--out", evolve_o.out, "output directory (default: .)");
    evolve->add_flag("--svg", evolve_o.svg, "also write plot.svg");
    evolve->add_option("--threads", evolve_o.threads, "worker threads (default 1)");

    CLI::App* sweep = app.add_subcommand("sweep", "Bell fidelities and gaps vs u/delta to sweep.csv");
    sweep->add_option("--ratio-min", sweep_o.ratio_min, "minimum u/delta (default 0)");
    sweep->add_option("--ratio-max", sweep_o.ratio_max, "maximum u/delta (default 20)");
    sweep->add_option("--points", sweep_o.points, "number of rows (default 201)");
    sweep->add_option("--delta-ev", sweep_o.delta_eV, "fixed delta in eV (default 1)");
    sweep->add_option("--out", sweep_o.out, "output directory (default: stdout)");
    sweep->add_option("--config", sweep_o.config_path, "JSON file supplying defaults");

    CLI::App* repro = app.add_subcommand("reproduce", "write a reproducible figure bundle");
    repro->add_option("--figure", repro_o.figure, "figure id: 3a, 3b, 3c, 3d, 4a, 4b or 4c")
        ->required();
    repro->add_option("--out", repro_o.out, "output directory (default: figure_<id>)");
    repro->add_flag("--svg", repro_o.svg, "also write plot.svg");
    repro->add_option("--threads", repro_o.threads, "worker threads (default 1)");
    repro->add_option("--config", repro_o.config_path, "JSON file supplying defaults");

    CLI::App* table = app.add_subcommand("table1", "preset parameters and beat timescales");
    table->add_flag("--json", table_o.as_json, "emit JSON instead of text");
    table->add_option("--out", table_o.out, "output file (default: stdout)");
    table->add_option("--config", table_o.config_path, "JSON file supplying defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error(json_errors, "usage", e.what());
        return 2;
    }

    note_presence(eig, eig_o);
    note_presence(evolve, evolve_o);
    note_presence(sweep, sweep_o);
    note_presence(repro, repro_o);
    note_presence(table, table_o);

    try {
        if (app.got_subcommand(eig)) return cmd_eig(eig_o);
        if (app.got_subcommand(evolve)) return cmd_evolve(evolve_o);
        if (app.got_subcommand(sweep)) return cmd_sweep(sweep_o);
        if (app.got_subcommand(repro)) return cmd_reproduce(repro_o);
        if (app.got_subcommand(table)) return cmd_table1(table_o);
        report_error(json_errors, "usage", "no subcommand selected");
        return 2;
    } catch (const qdw::parse_error& e) {
        report_error(json_errors, e.code(), e.what());
        return 2;
    } catch (const qdw::invalid_input_error& e) {
        report_error(json_errors, e.code(), e.what());
        return 2;
    } catch (const qdw::lookup_error& e) {
        report_error(json_errors, e.code(), e.what());
        return 2;
    } catch (const qdw::error& e) {
        report_error(json_errors, e.code(), e.what());
        return 1;
    } catch (const std::exception& e) {
        report_error(json_errors, "internal", e.what());
        return 1;
    }
}
