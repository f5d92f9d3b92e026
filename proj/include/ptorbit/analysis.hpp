#ifndef PTORBIT_ANALYSIS_HPP
#define PTORBIT_ANALYSIS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ptorbit/trajectory.hpp"

namespace ptorbit {

struct OrbitReport {
    enum class Classification { Closed, Open, Undetermined };
    Classification classification = Classification::Undetermined;
    std::optional<double> period;
    double closure_residual = 0.0;
    bool x_imag_axis_symmetric = false; // x-set invariant under z -> -conj(z)
    bool p_real_axis_symmetric = false; // p-set invariant under conjugation
    double x_symmetry_distance = 0.0;   // Hausdorff distances behind the flags
    double p_symmetry_distance = 0.0;
};

const char* to_string(OrbitReport::Classification c);

/// Smallest T > 0 with max_t (|x(t+T)-x(t)| + |p(t+T)-p(t)|) < tol, located
/// by scanning recurrence minima on the sample grid and refining by local
/// zoom with linear interpolation. Empty if nothing recurs below tol within
/// half the record. A numerically constant trajectory degenerates to the
/// grid step (classify_orbit reports it Undetermined).
/// Throws std::invalid_argument on trajectories too short to scan.
std::optional<double> detect_period(const Trajectory& traj, double tol = 1e-3);

/// Closed/Open classification plus set-level symmetry of the sampled
/// curves (Hausdorff distance between polylines, flag true below tol).
OrbitReport classify_orbit(const Trajectory& traj, double tol = 1e-3);

/// Minimum Euclidean distance between the two sampled x-curves, treated as
/// polylines in the (Re x, Im x) plane.
double min_orbit_separation(const Trajectory& a, const Trajectory& b);

/// How the turning points pair up under z -> -conj(z).
struct PairingReport {
    std::size_t total_points = 0;
    std::size_t pt_paired_points = 0; // points in (z, -conj z) pairs
    double pt_fraction = 0.0;
    bool fully_pt_paired = false;
    // Fraction of points whose Re has a sign-flipped partner. Below 1 only
    // through branch-window truncation (edge branches lose their partner).
    double re_paired_fraction = 0.0;
    // Broken-phase signature of the four smallest-|Im| points:
    // (a - i b1, -a - i b2, c - i d1, -c - i d2) — real parts pair with
    // sign flips while the imaginary parts differ within each pair.
    bool broken_quadruple = false;
    std::vector<std::pair<std::size_t, std::size_t>> pt_pairs;
};

PairingReport turning_point_pairing(const TurningPointSet& tps, PTPhase phase,
                                    double tol = 1e-6);

} // namespace ptorbit

#endif
