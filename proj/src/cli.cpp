#include "ptorbit/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptorbit/export.hpp"
#include "ptorbit/ode.hpp"
#include "ptorbit/scenario.hpp"
#include "ptorbit/sweep.hpp"

namespace ptorbit {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string file_label(const std::string& label) {
    std::string out = label.empty() ? "scenario" : label;
    for (char& c : out) {
        if (c == '/' || c == '\\' || c == ':') c = '_';
    }
    return out;
}

std::string format_complex(Complex z) {
    std::string out = format_double(z.real());
    if (z.imag() >= 0.0 || std::isnan(z.imag())) {
        out += "+" + format_double(z.imag()) + "i";
    } else {
        out += format_double(z.imag()) + "i";
    }
    return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
    const std::size_t n = std::min(a.samples.size(), b.samples.size());
    double sup = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sup = std::max(sup, std::abs(a.samples[k].x - b.samples[k].x));
        sup = std::max(sup, std::abs(a.samples[k].p - b.samples[k].p));
    }
    return sup;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_trajectory(const std::string& config, const std::string& out_dir,
                   bool with_oracle) {
    fs::create_directories(out_dir);
    for (const Scenario& scenario : load_scenarios(config)) {
        print_warnings(validate_scenario(scenario));
        const SolutionSpec spec = make_solution_spec(scenario);
        const Trajectory exact =
            sample_trajectory(spec, scenario.t_max, scenario.dt);

        std::ostringstream csv;
        Trajectory labeled = exact;
        labeled.info.label = scenario.label;
        write_trajectory_csv(csv, labeled);
        write_text_file(fs::path(out_dir) / (file_label(scenario.label) + "_exact.csv"),
                        csv.str());

        json report;
        report["scenario"] = scenario_to_json(scenario);
        report["theta0"] = complex_to_json(spec.theta0);
        report["dt_used"] = exact.info.dt_used;
        report["energy_drift_exact"] =
            energy_drift(exact, scenario.params, scenario.energy);

        std::string summary;
        if (exact.samples.size() >= 8) {
            const OrbitReport orbit = classify_orbit(exact, 1e-3);
            report["orbit"] = orbit_report_to_json(orbit);
            summary = to_string(orbit.classification);
            if (orbit.period) {
                summary += ", period " + format_double(*orbit.period);
            }
        } else {
            summary = "too short to classify";
        }

        if (with_oracle && scenario.t_max > 0.0) {
            IntegratorConfig cfg;
            cfg.t_max = scenario.t_max;
            cfg.dt_out = exact.info.dt_used;
            const Trajectory ode =
                integrate(scenario.params, initial_state(scenario), cfg);
            std::ostringstream ode_csv;
            Trajectory ode_labeled = ode;
            ode_labeled.info.label = scenario.label + "_ode";
            write_trajectory_csv(ode_csv, ode_labeled);
            write_text_file(fs::path(out_dir) / (file_label(scenario.label) + "_ode.csv"),
                            ode_csv.str());
            report["oracle"] = {
                {"sup_distance", sup_distance(exact, ode)},
                {"energy_drift",
                 energy_drift(ode, scenario.params, scenario.energy)}};
        }

        write_text_file(fs::path(out_dir) / (file_label(scenario.label) + "_report.json"),
                        report.dump(2) + "\n");
        std::cout << scenario.label << ": " << summary << "\n";
    }
    return 0;
}

int cmd_turning_points(const std::string& config, const std::string& out_dir) {
    std::optional<fs::path> out;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        out = fs::path(out_dir);
    }
    for (const Scenario& scenario : load_scenarios(config)) {
        const TurningPointSet tps =
            turning_points(scenario.params, scenario.energy);
        const PairingReport pairing =
            turning_point_pairing(tps, classify_phase(scenario.params));
        std::cout << scenario.label
                  << ": E = " << format_complex(scenario.energy) << "\n"
                  << turning_points_table(tps, scenario.params,
                                          scenario.energy)
                  << "  PT pairs (z, -conj z): " << pairing.pt_paired_points
                  << "/" << pairing.total_points << "\n";
        if (out) {
            const json j =
                turning_points_to_json(tps, scenario.params, scenario.energy);
            write_text_file(*out / (file_label(scenario.label) + "_turning_points.json"),
                            j.dump(2) + "\n");
        }
    }
    return 0;
}

int cmd_energy_window(const std::string& config, bool as_json) {
    for (const Scenario& scenario : load_scenarios(config)) {
        const EnergyWindow window = energy_window(scenario.params);
        if (as_json) {
            json j = energy_window_to_json(window);
            j["label"] = scenario.label;
            std::cout << j.dump() << "\n";
        } else {
            const char* kind =
                window.kind == EnergyWindow::Kind::RealInterval
                    ? "RealInterval"
                    : "ComplexConjugatePair";
            std::cout << scenario.label << ": " << kind << " "
                      << format_complex(window.lower) << " .. "
                      << format_complex(window.upper) << "\n";
        }
    }
    return 0;
}

int cmd_phase(const std::string& config) {
    for (const Scenario& scenario : load_scenarios(config)) {
        std::cout << to_string(classify_phase(scenario.params)) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& config, const std::string& json_path) {
    bool all_pass = true;
    json records = json::array();
    for (const Scenario& scenario : load_scenarios(config)) {
        const FactorizationScheme scheme = scarf_scheme(scenario.params);

        std::vector<Complex> xs;
        const double scale = 2.0 / scenario.params.alpha0;
        for (int i = 0; i < 21; ++i) {
            xs.push_back(Complex(scale * (-2.0 + 4.0 * double(i) / 20.0), 0.0));
        }
        const std::vector<Complex> energies = {scenario.energy,
                                               0.75 * scenario.energy,
                                               1.25 * scenario.energy};

        const VerifyReport report =
            verify_scheme(scheme, scenario.params, xs, energies);
        std::cout << scenario.label << ":\n" << report.to_table();
        json record = verify_report_to_json(report);
        record["label"] = scenario.label;
        records.push_back(record);
        all_pass = all_pass && report.pass();
    }
    if (!json_path.empty()) {
        write_text_file(json_path, records.dump(2) + "\n");
    }
    return all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& grid, const std::string& out_dir) {
    const SweepSpec spec = parse_grid_spec(grid);
    fs::create_directories(out_dir);
    const std::vector<SweepCell> cells =
        run_sweep(spec, sweep_thread_count());

    std::ostringstream csv;
    write_sweep_csv(csv, cells);
    write_text_file(fs::path(out_dir) / "sweep.csv", csv.str());
    write_text_file(fs::path(out_dir) / "sweep_meta.json",
                    sweep_metadata(spec).dump(2) + "\n");

    std::size_t closed = 0, open = 0, other = 0;
    for (const auto& c : cells) {
        switch (c.classification) {
            case OrbitReport::Classification::Closed: ++closed; break;
            case OrbitReport::Classification::Open: ++open; break;
            default: ++other; break;
        }
    }
    std::cout << cells.size() << " cells: " << closed << " closed, " << open
              << " open, " << other << " undetermined\n";
    return 0;
}

int cmd_plot(const std::string& config, const std::string& kind_name,
             const std::string& out_dir) {
    PlotKind kind;
    if (kind_name == "orbit") {
        kind = PlotKind::Orbit;
    } else if (kind_name == "momentum") {
        kind = PlotKind::Momentum;
    } else if (kind_name == "phase-space") {
        kind = PlotKind::PhaseSpace;
    } else {
        throw ConfigError("--kind", "expected orbit, momentum or phase-space");
    }

    fs::create_directories(out_dir);
    std::vector<Trajectory> curves;
    std::string title;
    for (const Scenario& scenario : load_scenarios(config)) {
        print_warnings(validate_scenario(scenario));
        const SolutionSpec spec = make_solution_spec(scenario);
        Trajectory traj = sample_trajectory(spec, scenario.t_max, scenario.dt);
        traj.info.label = scenario.label;
        if (title.empty()) title = scenario.label;
        curves.push_back(std::move(traj));
    }
    if (curves.size() > 1) title += " (+" + std::to_string(curves.size() - 1) +
                                   " more)";

    std::ostringstream svg;
    write_svg(svg, curves, kind, title);
    const std::string stem = fs::path(config).stem().string();
    const fs::path file =
        fs::path(out_dir) / (stem + "_" + kind_name + ".svg");
    write_text_file(file, svg.str());
    std::cout << "wrote " << file.string() << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Complex classical trajectories of the complexified Scarf II "
                 "potential"};
    app.require_subcommand(1);

    std::string config, out_dir, grid, kind, json_path;
    bool with_oracle = false;

    auto* trajectory = app.add_subcommand(
        "trajectory", "Sample the closed-form trajectory to CSV + report");
    trajectory->add_option("--config", config)->required();
    trajectory->add_option("--out", out_dir)->required();
    trajectory->add_flag("--oracle", with_oracle,
                         "Also integrate Hamilton's equations");

    auto* turning = app.add_subcommand("turning-points",
                                       "Roots of E - V(x) = 0 per branch");
    turning->add_option("--config", config)->required();
    turning->add_option("--out", out_dir);

    auto* window = app.add_subcommand("energy-window",
                                      "Classically allowed energy range");
    window->add_option("--config", config)->required();
    bool window_json = false;
    window->add_flag("--json", window_json);

    auto* phase = app.add_subcommand("phase", "PT phase classification");
    phase->add_option("--config", config)->required();

    auto* verify = app.add_subcommand(
        "verify", "Factorization residuals; nonzero exit on failure");
    verify->add_option("--config", config)->required();
    verify->add_option("--json", json_path);

    auto* sweep = app.add_subcommand(
        "sweep", "Closed/Open classification over a (gamma0, delta_I) grid");
    sweep->add_option("--grid", grid)->required();
    sweep->add_option("--out", out_dir)->required();

    auto* plot = app.add_subcommand("plot", "SVG figure for a config");
    plot->add_option("--config", config)->required();
    plot->add_option("--kind", kind)->required();
    plot->add_option("--out", out_dir)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (trajectory->parsed()) {
            return cmd_trajectory(config, out_dir, with_oracle);
        }
        if (turning->parsed()) return cmd_turning_points(config, out_dir);
        if (window->parsed()) return cmd_energy_window(config, window_json);
        if (phase->parsed()) return cmd_phase(config);
        if (verify->parsed()) return cmd_verify(config, json_path);
        if (sweep->parsed()) return cmd_sweep(grid, out_dir);
        if (plot->parsed()) return cmd_plot(config, kind, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace ptorbit
