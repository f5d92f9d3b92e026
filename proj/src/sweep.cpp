#include "ptorbit/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <thread>

#include "ptorbit/exact_solver.hpp"
#include "ptorbit/export.hpp"

namespace ptorbit {

namespace {

GridAxis parse_axis(const std::string& text, const std::string& name) {
    GridAxis axis;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    auto bad = [&]() {
        throw std::invalid_argument("sweep grid: axis '" + name +
                                    "' must look like lo:hi:count");
    };
    auto take_double = [&](double& out) {
        const auto [next, ec] = std::from_chars(p, end, out);
        if (ec != std::errc{}) bad();
        p = next;
    };
    take_double(axis.lo);
    if (p == end || *p != ':') bad();
    ++p;
    take_double(axis.hi);
    if (p == end || *p != ':') bad();
    ++p;
    const auto [next, ec] = std::from_chars(p, end, axis.count);
    if (ec != std::errc{} || next != end || axis.count < 1) bad();
    return axis;
}

} // namespace

SweepSpec parse_grid_spec(const std::string& text) {
    SweepSpec spec;
    bool saw_gamma = false, saw_delta = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string part = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? text.size() : comma + 1;
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("sweep grid: expected name=lo:hi:count");
        }
        const std::string name = part.substr(0, eq);
        const std::string value = part.substr(eq + 1);
        if (name == "gamma0") {
            spec.gamma0 = parse_axis(value, name);
            saw_gamma = true;
        } else if (name == "delta_I") {
            spec.delta_i = parse_axis(value, name);
            saw_delta = true;
        } else if (name == "alpha0") {
            const GridAxis a = parse_axis(value + ":" + value + ":1", name);
            spec.alpha0 = a.lo;
        } else {
            throw std::invalid_argument("sweep grid: unknown axis '" + name +
                                        "'");
        }
    }
    if (!saw_gamma || !saw_delta) {
        throw std::invalid_argument(
            "sweep grid: both gamma0 and delta_I axes are required");
    }
    return spec;
}

namespace {

SweepCell run_cell(const SweepSpec& spec, int ig, int id) {
    SweepCell cell;
    cell.gamma0 = spec.gamma0.at(ig);
    cell.delta_i = spec.delta_i.at(id);

    ScarfParams params;
    params.alpha0 = spec.alpha0;
    params.gamma0 = cell.gamma0;
    params.delta = Complex(0.0, cell.delta_i);
    cell.phase = classify_phase(params);

    // Cell energy: window midpoint for real spectra; the broken phase dips
    // 0.3 below the real axis when the window is deep enough for it.
    if (cell.phase == PTPhase::PTBroken) {
        const double halfspan =
            0.5 * std::sqrt(4.0 * cell.delta_i * cell.delta_i -
                            cell.gamma0 * cell.gamma0);
        const double shift = halfspan > 0.3 ? 0.3 : 0.5 * halfspan;
        cell.energy = Complex(-0.5 * cell.gamma0, -shift);
        cell.energy_rule = halfspan > 0.3 ? "fig4_shift" : "half_span";
    } else if (cell.phase == PTPhase::RealPotential) {
        const EnergyWindow window = energy_window(params);
        cell.energy = 0.5 * (window.lower + window.upper);
        cell.energy_rule = "window_midpoint";
    } else {
        cell.energy = Complex(-0.5 * cell.gamma0, 0.0);
        cell.energy_rule = "window_midpoint";
    }

    try {
        const Complex x0 = Complex(0.3, 0.5) * (2.0 / spec.alpha0);
        const SolutionSpec sol =
            SolutionSpec::from_position(params, cell.energy, x0, +1);
        const double pseudo_period =
            2.0 * std::numbers::pi / std::abs(sol.alpha);
        const double t_max = 6.0 * pseudo_period;
        const Trajectory traj =
            sample_trajectory(sol, t_max, t_max / 4096.0);
        const OrbitReport report = classify_orbit(traj, 1e-3);
        cell.classification = report.classification;
        cell.period = report.period;
        cell.closure_residual = report.closure_residual;
    } catch (const std::exception&) {
        // Degenerate energy (exceptional point) or a start too close to a
        // pole: report the cell as undetermined rather than dropping it.
        cell.classification = OrbitReport::Classification::Undetermined;
        cell.energy_rule += ",degenerate";
    }
    return cell;
}

} // namespace

std::vector<SweepCell> run_sweep(const SweepSpec& spec, unsigned threads) {
    const std::size_t total =
        std::size_t(spec.gamma0.count) * std::size_t(spec.delta_i.count);
    std::vector<SweepCell> cells(total);

    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, total));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= total) return;
            const int ig = int(k / std::size_t(spec.delta_i.count));
            const int id = int(k % std::size_t(spec.delta_i.count));
            cells[k] = run_cell(spec, ig, id);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
    out << "gamma0,delta_i,energy_re,energy_im,phase,classification,period,"
           "closure_residual,energy_rule\n";
    for (const auto& c : cells) {
        out << format_double(c.gamma0) << ',' << format_double(c.delta_i)
            << ',' << format_double(c.energy.real()) << ','
            << format_double(c.energy.imag()) << ',' << to_string(c.phase)
            << ',' << to_string(c.classification) << ','
            << (c.period ? format_double(*c.period) : std::string{}) << ','
            << format_double(c.closure_residual) << ',' << c.energy_rule
            << '\n';
    }
}

nlohmann::json sweep_metadata(const SweepSpec& spec) {
    auto axis = [](const GridAxis& a) {
        return nlohmann::json{{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}};
    };
    return nlohmann::json{
        {"gamma0", axis(spec.gamma0)},
        {"delta_I", axis(spec.delta_i)},
        {"alpha0", spec.alpha0},
        {"start", "x0 = (0.3 + 0.5i) * 2/alpha0, p_sign +"},
        {"energy_rule",
         "real spectra: window midpoint; broken phase: Re = -gamma0/2 with "
         "imaginary shift -0.3 when the window half-span exceeds 0.3, else "
         "-half_span/2; exceptional-point cells are Undetermined"},
        {"orbit_tolerance", 1e-3}};
}

unsigned sweep_thread_count() {
    if (const char* env = std::getenv("PTORBIT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return unsigned(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace ptorbit
