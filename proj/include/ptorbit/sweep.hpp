#ifndef PTORBIT_SWEEP_HPP
#define PTORBIT_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptorbit/analysis.hpp"

namespace ptorbit {

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    double at(int i) const {
        return count > 1 ? lo + (hi - lo) * double(i) / double(count - 1) : lo;
    }
};

/// Inclusive (gamma0, delta_I) grid, e.g. "gamma0=2:8:13,delta_I=0.5:4:15".
struct SweepSpec {
    GridAxis gamma0{2.0, 8.0, 13};
    GridAxis delta_i{0.5, 4.0, 15};
    double alpha0 = 2.0;
};

SweepSpec parse_grid_spec(const std::string& text); // throws std::invalid_argument

struct SweepCell {
    double gamma0 = 0.0;
    double delta_i = 0.0;
    Complex energy{};
    PTPhase phase = PTPhase::PTUnbroken;
    OrbitReport::Classification classification =
        OrbitReport::Classification::Undetermined;
    std::optional<double> period;
    double closure_residual = 0.0;
    std::string energy_rule;
};

/// Runs every cell (concurrently up to `threads`) and returns them in grid
/// order, delta_I fastest. Each cell: classify the phase, pick the cell
/// energy, run the exact solver from a fixed off-axis start and classify
/// the orbit.
std::vector<SweepCell> run_sweep(const SweepSpec& spec, unsigned threads);

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);
nlohmann::json sweep_metadata(const SweepSpec& spec);

/// Thread cap from PTORBIT_THREADS, falling back to the machine.
unsigned sweep_thread_count();

} // namespace ptorbit

#endif
