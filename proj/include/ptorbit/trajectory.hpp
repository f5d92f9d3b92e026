#ifndef PTORBIT_TRAJECTORY_HPP
#define PTORBIT_TRAJECTORY_HPP

#include <string>
#include <vector>

#include "ptorbit/scarf.hpp"

namespace ptorbit {

struct TrajectorySample {
    double t;
    Complex x;
    Complex p;
};

enum class TrajectorySource { ExactFormula, OdeIntegration };

/// Provenance carried with every sampled trajectory.
struct TrajectoryInfo {
    ScarfParams params;
    Complex energy{};
    Complex theta0{};
    PhasePoint initial{};
    double dt_used = 0.0;
    std::string label;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    TrajectorySource source = TrajectorySource::ExactFormula;
    TrajectoryInfo info;

    bool empty() const { return samples.empty(); }
    std::size_t size() const { return samples.size(); }
    double duration() const {
        return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
    }
};

} // namespace ptorbit

#endif
