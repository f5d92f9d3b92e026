#ifndef PTORBIT_EXPORT_HPP
#define PTORBIT_EXPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptorbit/analysis.hpp"
#include "ptorbit/factorization.hpp"
#include "ptorbit/trajectory.hpp"

namespace ptorbit {

/// Shortest decimal that round-trips the double exactly.
std::string format_double(double value);

/// Columns: t,x_re,x_im,p_re,p_im,H_re,H_im with H = p^2 + V(x).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& in);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json orbit_report_to_json(const OrbitReport& report);
nlohmann::json turning_points_to_json(const TurningPointSet& set,
                                      const ScarfParams& params, Complex E);
std::string turning_points_table(const TurningPointSet& set,
                                 const ScarfParams& params, Complex E);
nlohmann::json energy_window_to_json(const EnergyWindow& window);
nlohmann::json verify_report_to_json(const VerifyReport& report);

enum class PlotKind { Orbit, Momentum, PhaseSpace };

/// One polyline per trajectory; orbit and momentum kinds plot the complex
/// plane, phase-space plots (Re x, Re p). No timestamps, deterministic.
void write_svg(std::ostream& out, const std::vector<Trajectory>& curves,
               PlotKind kind, const std::string& title);

} // namespace ptorbit

#endif
