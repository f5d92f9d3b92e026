#include "ptorbit/scenario.hpp"

#include <cmath>
#include <fstream>

#include "ptorbit/export.hpp"

namespace ptorbit {

using nlohmann::json;

namespace {

double number_field(const json& j, const std::string& field, bool required,
                    double fallback) {
    if (!j.contains(field)) {
        if (required) throw ConfigError(field, "missing required field");
        return fallback;
    }
    if (!j.at(field).is_number()) {
        throw ConfigError(field, "expected a number");
    }
    return j.at(field).get<double>();
}

} // namespace

Complex complex_from_json(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ConfigError(field, "missing required field");
    const json& v = j.at(field);
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (!v.is_object() || !v.contains("re")) {
        throw ConfigError(field, "expected {\"re\": ..., \"im\": ...}");
    }
    if (!v.at("re").is_number() ||
        (v.contains("im") && !v.at("im").is_number())) {
        throw ConfigError(field, "re/im must be numbers");
    }
    const double re = v.at("re").get<double>();
    const double im = v.contains("im") ? v.at("im").get<double>() : 0.0;
    return Complex(re, im);
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("(root)", "scenario must be a JSON object");
    }
    Scenario s;
    s.params.alpha0 = number_field(j, "alpha0", true, 0.0);
    s.params.gamma0 = number_field(j, "gamma0", true, 0.0);
    s.params.delta = complex_from_json(j, "delta");
    try {
        s.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("alpha0/gamma0/delta", e.what());
    }
    s.energy = complex_from_json(j, "energy");

    if (!j.contains("initial") || !j.at("initial").is_object()) {
        throw ConfigError("initial", "missing initial-condition object");
    }
    const json& init = j.at("initial");
    if (init.contains("theta0")) {
        s.initial = Theta0Init{complex_from_json(init, "theta0")};
    } else if (init.contains("x0") && init.contains("p0")) {
        s.initial = StateInit{complex_from_json(init, "x0"),
                              complex_from_json(init, "p0")};
    } else if (init.contains("x0")) {
        PositionInit pi;
        pi.x0 = complex_from_json(init, "x0");
        const std::string sign = init.value("p_sign", "+");
        if (sign == "+") {
            pi.p_sign = +1;
        } else if (sign == "-") {
            pi.p_sign = -1;
        } else {
            throw ConfigError("initial.p_sign", "expected \"+\" or \"-\"");
        }
        s.initial = pi;
    } else {
        throw ConfigError("initial",
                          "expected {theta0}, {x0, p_sign} or {x0, p0}");
    }

    s.t_max = number_field(j, "t_max", false, 10.0);
    s.dt = number_field(j, "dt", false, 0.0);
    if (!(s.t_max >= 0.0) || !std::isfinite(s.t_max)) {
        throw ConfigError("t_max", "must be finite and >= 0");
    }
    if (!(s.dt >= 0.0) || !std::isfinite(s.dt)) {
        throw ConfigError("dt", "must be finite and >= 0");
    }
    if (j.contains("label")) {
        if (!j.at("label").is_string()) {
            throw ConfigError("label", "expected a string");
        }
        s.label = j.at("label").get<std::string>();
    }
    return s;
}

json scenario_to_json(const Scenario& s) {
    json init;
    if (const auto* t = std::get_if<Theta0Init>(&s.initial)) {
        init["theta0"] = complex_to_json(t->theta0);
    } else if (const auto* p = std::get_if<PositionInit>(&s.initial)) {
        init["x0"] = complex_to_json(p->x0);
        init["p_sign"] = p->p_sign >= 0 ? "+" : "-";
    } else if (const auto* st = std::get_if<StateInit>(&s.initial)) {
        init["x0"] = complex_to_json(st->x0);
        init["p0"] = complex_to_json(st->p0);
    }
    return json{{"alpha0", s.params.alpha0}, {"gamma0", s.params.gamma0},
                {"delta", complex_to_json(s.params.delta)},
                {"energy", complex_to_json(s.energy)},
                {"initial", init},      {"t_max", s.t_max},
                {"dt", s.dt},           {"label", s.label}};
}

std::vector<Scenario> load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("(file)", "cannot open config file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("(parse)", e.what());
    }

    std::vector<Scenario> scenarios;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            try {
                scenarios.push_back(scenario_from_json(j.at(i)));
            } catch (const ConfigError& e) {
                throw ConfigError("[" + std::to_string(i) + "]." + e.field(),
                                  e.what());
            }
        }
    } else {
        scenarios.push_back(scenario_from_json(j));
    }
    if (scenarios.empty()) {
        throw ConfigError("(root)", "config holds no scenarios");
    }
    return scenarios;
}

std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> warnings;
    if (s.energy == 0.0) {
        throw ConfigError("energy", "E = 0 is degenerate for this potential");
    }

    const PTPhase phase = classify_phase(s.params);
    if (phase != PTPhase::NonPTSymmetric) {
        const EnergyWindow window = energy_window(s.params);
        if (!window.contains(s.energy, 1e-6)) {
            throw ConfigError("energy",
                              "outside the classically allowed window");
        }
        if (window.on_boundary(s.energy, 1e-6)) {
            warnings.push_back("scenario '" + s.label +
                               "': energy sits on the window boundary "
                               "(degenerate orbit)");
        }
    }

    if (const auto* st = std::get_if<StateInit>(&s.initial)) {
        const Complex H = st->p0 * st->p0 + eval_V(s.params, st->x0);
        if (std::abs(H - s.energy) > 1e-8 * (1.0 + std::abs(s.energy))) {
            throw ConfigError("initial.p0",
                              "initial state off the energy shell");
        }
    }
    return warnings;
}

SolutionSpec make_solution_spec(const Scenario& s) {
    if (const auto* t = std::get_if<Theta0Init>(&s.initial)) {
        return SolutionSpec::from_theta0(s.params, s.energy, t->theta0);
    }
    if (const auto* p = std::get_if<PositionInit>(&s.initial)) {
        return SolutionSpec::from_position(s.params, s.energy, p->x0,
                                           p->p_sign);
    }
    const auto& st = std::get<StateInit>(s.initial);
    return SolutionSpec::from_state(s.params, s.energy,
                                    PhasePoint{st.x0, st.p0});
}

PhasePoint initial_state(const Scenario& s) {
    if (const auto* t = std::get_if<Theta0Init>(&s.initial)) {
        const SolutionSpec spec =
            SolutionSpec::from_theta0(s.params, s.energy, t->theta0);
        BranchContext ctx = initial_context(spec);
        const Complex x = position_at(spec, 0.0, ctx);
        return {x, momentum_at(spec, 0.0, x)};
    }
    if (const auto* p = std::get_if<PositionInit>(&s.initial)) {
        const Complex p0 = double(p->p_sign >= 0 ? 1 : -1) *
                           std::sqrt(s.energy - eval_V(s.params, p->x0));
        return {p->x0, p0};
    }
    const auto& st = std::get<StateInit>(s.initial);
    return {st.x0, st.p0};
}

} // namespace ptorbit
