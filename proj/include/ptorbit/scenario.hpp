#ifndef PTORBIT_SCENARIO_HPP
#define PTORBIT_SCENARIO_HPP

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ptorbit/exact_solver.hpp"

namespace ptorbit {

/// Config file problem: names the offending field.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

struct Theta0Init {
    Complex theta0;
};
struct PositionInit {
    Complex x0;
    int p_sign = +1;
};
struct StateInit {
    Complex x0;
    Complex p0;
};

/// One run of the solver: parameters, energy, starting condition, grid.
struct Scenario {
    ScarfParams params;
    Complex energy;
    std::variant<Theta0Init, PositionInit, StateInit> initial;
    double t_max = 10.0;
    double dt = 0.0; // 0 -> solver default
    std::string label = "scenario";
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Loads a config file holding one scenario object or an array of them.
/// Throws ConfigError with diagnostics on malformed input.
std::vector<Scenario> load_scenarios(const std::string& path);

/// Semantic checks beyond parsing; returns human-readable warnings
/// (e.g. energy on the window boundary). Throws ConfigError when the
/// energy lies outside the classically allowed window or an explicit
/// (x0, p0) pair is off-shell.
std::vector<std::string> validate_scenario(const Scenario& s);

SolutionSpec make_solution_spec(const Scenario& s);

/// The exact phase-space starting point the scenario describes.
PhasePoint initial_state(const Scenario& s);

} // namespace ptorbit

#endif
