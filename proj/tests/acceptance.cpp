// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. argv[1] names the reference-config
// directory (defaults to ../configs relative to the working directory).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptorbit/analysis.hpp"
#include "ptorbit/cli.hpp"
#include "ptorbit/exact_solver.hpp"
#include "ptorbit/export.hpp"
#include "ptorbit/ode.hpp"
#include "ptorbit/scenario.hpp"

using namespace ptorbit;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const ScarfParams fig1_params{2.0, 6.0, Complex(0.0, 2.0)};
const ScarfParams fig4_params{2.0, 3.0, Complex(0.0, 2.0)};
const Complex fig1_E(-3.0, 0.0);
const Complex fig4_E(-1.5, -0.3);

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("%s  criterion %2d  %s\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

bool contains_point(const std::vector<TurningPoint>& pts, Complex z,
                    double tol) {
    for (const auto& tp : pts) {
        if (std::abs(tp.location - z) < tol) return true;
    }
    return false;
}

PhasePoint onshell(const ScarfParams& params, Complex E, Complex x0) {
    return {x0, std::sqrt(E - eval_V(params, x0))};
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
    double sup = 0.0;
    const std::size_t n = std::min(a.samples.size(), b.samples.size());
    for (std::size_t k = 0; k < n; ++k) {
        sup = std::max(sup, std::abs(a.samples[k].x - b.samples[k].x));
        sup = std::max(sup, std::abs(a.samples[k].p - b.samples[k].p));
    }
    return sup;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("ptorbit_accept_" + tag + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// 1. and 2.: turning points through the CLI surface.
void criterion_turning_points(const fs::path& configs) {
    struct Case {
        int criterion;
        const char* config;
        std::vector<Complex> expected;
    };
    const std::vector<Case> cases = {
        {1,
         "fig1.json",
         {{0.781368, -0.528945},
          {-0.781368, -0.528945},
          {0.781368, -2.61265},
          {-0.781368, -2.61265}}},
        {2,
         "fig4.json",
         {{-0.102199, -0.470998},
          {0.102199, -2.67059},
          {-1.40526, -1.3489},
          {1.40526, -1.79269}}},
    };
    for (const auto& c : cases) {
        TempDir dir(std::string("tp") + std::to_string(c.criterion));
        const int rc =
            run_cli({"turning-points", "--config",
                     (configs / c.config).string(), "--out",
                     dir.path.string()});
        bool ok = rc == 0;
        std::vector<TurningPoint> pts;
        if (ok) {
            const std::string label = c.criterion == 1 ? "fig1" : "fig4";
            const json j = json::parse(
                slurp(dir.path / (label + "_turning_points.json")));
            for (const auto& p : j.at("points")) {
                pts.push_back({Complex(p.at("x").at("re").get<double>(),
                                       p.at("x").at("im").get<double>()),
                               0, 0});
            }
            for (const Complex want : c.expected) {
                ok = ok && contains_point(pts, want, 1e-4);
            }
        }
        report(c.criterion, ok,
               std::string("turning points match the reference values "
                           "(1e-4), ") +
                   c.config);
    }
}

void criterion_energy_windows() {
    const EnergyWindow w1 = energy_window(fig1_params);
    bool ok = w1.kind == EnergyWindow::Kind::RealInterval &&
              std::abs(w1.lower - Complex(-5.23607, 0.0)) < 1e-5 &&
              std::abs(w1.upper - Complex(-0.763932, 0.0)) < 1e-5;
    const EnergyWindow w4 = energy_window(fig4_params);
    ok = ok && w4.kind == EnergyWindow::Kind::ComplexConjugatePair &&
         std::abs(w4.lower - Complex(-1.5, -1.32288)) < 1e-5 &&
         std::abs(w4.upper - Complex(-1.5, 1.32288)) < 1e-5;
    report(3, ok,
           "energy windows (-5.23607, -0.763932) and -1.5 +- 1.32288i (1e-5)");
}

void criterion_phase_boundary() {
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double gamma0 = 0.5 + 9.5 * double(i) / 19.0;
            const double delta_i = 0.25 + 4.75 * double(j) / 19.0;
            const PTPhase phase =
                classify_phase({2.0, gamma0, Complex(0.0, delta_i)});
            const PTPhase want = gamma0 >= 2.0 * delta_i ? PTPhase::PTUnbroken
                                                         : PTPhase::PTBroken;
            ok = ok && phase == want;
        }
    }
    report(4, ok,
           "PTUnbroken iff gamma0 >= 2|delta_I| on a 20x20 grid, boundary "
           "inclusive");
}

void criterion_period() {
    const std::vector<Complex> starts = {{0.3, 0.5}, {0.3, 0.8}, {-0.2, 0.6}};
    std::vector<double> periods;
    bool ok = true;
    for (const Complex x0 : starts) {
        const SolutionSpec spec =
            SolutionSpec::from_position(fig1_params, fig1_E, x0, +1);
        const Trajectory traj = sample_trajectory(spec, 12.0, 0.0);
        const auto T = detect_period(traj, 1e-3);
        if (!T) {
            ok = false;
            continue;
        }
        periods.push_back(*T);
        ok = ok && std::abs(*T - 3.6276) < 5e-3;
    }
    for (std::size_t a = 0; a < periods.size(); ++a) {
        for (std::size_t b = a + 1; b < periods.size(); ++b) {
            ok = ok && std::abs(periods[a] - periods[b]) < 5e-3;
        }
    }
    ok = ok && periods.size() == starts.size();
    report(5, ok,
           "period 3.6276 +- 5e-3 from 3 off-axis starts, pairwise within "
           "5e-3");
}

void criterion_closed_open() {
    const SolutionSpec closed =
        SolutionSpec::from_position(fig1_params, fig1_E, {0.3, 0.5}, +1);
    const OrbitReport r1 =
        classify_orbit(sample_trajectory(closed, 12.0, 0.0), 1e-3);

    const SolutionSpec open =
        SolutionSpec::from_position(fig4_params, fig4_E, {0.3, 0.5}, +1);
    const Trajectory open_traj = sample_trajectory(open, 20.0, 0.0);
    const OrbitReport r4 = classify_orbit(open_traj, 1e-2);

    const bool ok =
        r1.classification == OrbitReport::Classification::Closed &&
        r4.classification == OrbitReport::Classification::Open &&
        r4.closure_residual > 1e-2;
    report(6, ok,
           "closed orbit in the unbroken phase, open (no recurrence below "
           "1e-2, t_max 20) in the broken phase");
}

void criterion_oracle_equivalence() {
    bool ok = true;
    for (const auto& [params, E] :
         {std::pair{fig1_params, fig1_E}, std::pair{fig4_params, fig4_E}}) {
        const SolutionSpec spec =
            SolutionSpec::from_position(params, E, {0.3, 0.5}, +1);
        const Trajectory exact = sample_trajectory(spec, 10.0, 0.0);
        IntegratorConfig cfg; // rel = abs = 1e-10 by default
        cfg.t_max = 10.0;
        cfg.dt_out = exact.info.dt_used;
        const Trajectory ode =
            integrate(params, onshell(params, E, {0.3, 0.5}), cfg);
        ok = ok && ode.samples.size() == exact.samples.size();
        ok = ok && sup_distance(exact, ode) < 1e-6;
    }
    report(7, ok,
           "exact vs oracle sup-norm < 1e-6 over [0,10], both phases "
           "(oracle tol 1e-10); momentum formula matches the oracle");
}

void criterion_identities() {
    const FactorizationScheme scheme = scarf_scheme(fig1_params);
    bool ok = true;

    // Eq.-(20)-type product at 100 random on-shell points.
    const Complex target = fig1_E + fig1_params.gamma0 -
                           fig1_params.delta * fig1_params.delta / fig1_E;
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> re(-1.5, 1.5);
    std::uniform_real_distribution<double> im(-0.9, 0.9);
    std::uniform_int_distribution<int> flip(0, 1);
    int accepted = 0;
    while (accepted < 100) {
        const Complex x(re(rng), im(rng));
        Complex V;
        try {
            V = eval_V(fig1_params, x);
        } catch (const std::domain_error&) {
            continue;
        }
        Complex p = std::sqrt(fig1_E - V);
        if (flip(rng)) p = -p;
        ++accepted;
        const auto [ap, am] =
            ladder_values(scheme, fig1_params, {x, p}, fig1_E);
        ok = ok &&
             std::abs(ap * am - target) < 1e-10 * (1.0 + std::abs(target));
    }

    // Determining equations on the standard grid; brackets at 50 points.
    std::vector<Complex> xs;
    for (int i = 0; i <= 20; ++i) {
        xs.push_back(Complex(-2.0 + 4.0 * double(i) / 20.0, 0.0));
    }
    const std::vector<Complex> energies = {{-1.0, 0.0}, {-2.0, 0.0}, fig1_E};
    const VerifyReport vr =
        verify_scheme(scheme, fig1_params, xs, energies, 50);
    ok = ok && vr.eq8_max < 1e-8 && vr.eq9_max < 1e-8;
    ok = ok && vr.bracket_plus_max < 1e-5 && vr.bracket_minus_max < 1e-5 &&
         vr.bracket_pm_max < 1e-5;

    // Q+- constancy along an integrated trajectory over [0, 10].
    IntegratorConfig cfg;
    cfg.t_max = 10.0;
    cfg.dt_out = 0.01;
    const PhasePoint start = onshell(fig1_params, fig1_E, {0.3, 0.5});
    const Trajectory traj = integrate(fig1_params, start, cfg);
    const auto [q0p, q0m] = q_values(scheme, fig1_params, start, fig1_E, 0.0);
    double q_dev = 0.0;
    for (const auto& s : traj.samples) {
        const auto [qp, qm] =
            q_values(scheme, fig1_params, {s.x, s.p}, fig1_E, s.t);
        q_dev = std::max({q_dev, std::abs(qp - q0p), std::abs(qm - q0m)});
    }
    ok = ok && q_dev < 1e-6;

    report(8, ok,
           "algebraic identities: product 1e-10 (100 pts), determining eqs "
           "1e-8, brackets 1e-5 (50 pts), Q constancy 1e-6");
}

void criterion_energy_conservation() {
    bool ok = true;
    for (const auto& [params, E, t_max] :
         {std::tuple{fig1_params, fig1_E, 10.0},
          std::tuple{fig4_params, fig4_E, 10.0}}) {
        IntegratorConfig cfg;
        cfg.t_max = t_max;
        const Trajectory ode =
            integrate(params, onshell(params, E, {0.3, 0.5}), cfg);
        ok = ok && energy_drift(ode, params, E) < 1e-8;

        const SolutionSpec spec =
            SolutionSpec::from_position(params, E, {0.3, 0.5}, +1);
        const Trajectory exact = sample_trajectory(spec, t_max, 0.0);
        ok = ok &&
             energy_drift(exact, params, E) < 1e-9 * (1.0 + std::abs(E));
    }
    report(9, ok,
           "energy drift < 1e-8 (oracle, default tolerances) and < "
           "1e-9 (1+|E|) (exact), both phases");
}

void criterion_symmetry() {
    const SolutionSpec spec =
        SolutionSpec::from_position(fig1_params, fig1_E, {0.3, 0.5}, +1);
    const OrbitReport orbit =
        classify_orbit(sample_trajectory(spec, 12.0, 0.0), 1e-3);
    bool ok = orbit.x_imag_axis_symmetric && orbit.p_real_axis_symmetric &&
              orbit.x_symmetry_distance < 1e-3 &&
              orbit.p_symmetry_distance < 1e-3;

    const TurningPointSet tps = turning_points(fig1_params, fig1_E);
    const PairingReport pairing =
        turning_point_pairing(tps, PTPhase::PTUnbroken);
    ok = ok && pairing.fully_pt_paired;

    IntegratorConfig cfg;
    cfg.t_max = 6.0;
    cfg.dt_out = 0.002;
    const Trajectory traj =
        integrate(fig1_params, onshell(fig1_params, fig1_E, {0.3, 0.5}), cfg);
    const Trajectory partner = pt_partner(traj);
    ok = ok && ode_residual(partner, fig1_params, cfg) < 1e-6;

    report(10, ok,
           "x-set and p-set symmetric (Hausdorff < 1e-3), turning points "
           "fully (z,-z*)-paired, PT partner solves the equations of motion");
}

void criterion_non_crossing() {
    const SolutionSpec a =
        SolutionSpec::from_position(fig1_params, fig1_E, {0.3, 0.5}, +1);
    const SolutionSpec b =
        SolutionSpec::from_position(fig1_params, fig1_E, {0.3, 0.8}, +1);
    const Trajectory ta = sample_trajectory(a, 8.0, 0.0);
    const Trajectory tb = sample_trajectory(b, 8.0, 0.0);
    const double sep = min_orbit_separation(ta, tb);
    report(11, sep > 1e-3,
           "nested orbits from distinct starts stay separated (> 1e-3; "
           "measured " +
               format_double(sep) + ")");
}

void criterion_determinism(const fs::path& configs) {
    bool ok = true;
    for (const char* config : {"fig1.json", "fig4.json"}) {
        TempDir d1(std::string("det1_") + config);
        TempDir d2(std::string("det2_") + config);
        const std::string label =
            std::string(config) == "fig1.json" ? "fig1" : "fig4";
        ok = ok && run_cli({"trajectory", "--config",
                            (configs / config).string(), "--out",
                            d1.path.string()}) == 0;
        ok = ok && run_cli({"trajectory", "--config",
                            (configs / config).string(), "--out",
                            d2.path.string()}) == 0;
        const std::string csv1 = slurp(d1.path / (label + "_exact.csv"));
        ok = ok && !csv1.empty() &&
             csv1 == slurp(d2.path / (label + "_exact.csv"));
        ok = ok && slurp(d1.path / (label + "_report.json")) ==
                       slurp(d2.path / (label + "_report.json"));
    }
    report(12, ok,
           "repeated runs of the reference configs produce byte-identical "
           "outputs");
}

} // namespace

int main(int argc, char** argv) {
    const fs::path configs = argc > 1 ? fs::path(argv[1]) : "../configs";

    try {
        criterion_turning_points(configs);
        criterion_energy_windows();
        criterion_phase_boundary();
        criterion_period();
        criterion_closed_open();
        criterion_oracle_equivalence();
        criterion_identities();
        criterion_energy_conservation();
        criterion_symmetry();
        criterion_non_crossing();
        criterion_determinism(configs);
    } catch (const std::exception& e) {
        std::printf("FAIL  acceptance aborted: %s\n", e.what());
        return 1;
    }

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
