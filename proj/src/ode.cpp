#include "ptorbit/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ptorbit {

void IntegratorConfig::validate() const {
    auto tol_ok = [](double tol) { return tol > 0.0 && tol <= 1e-2; };
    if (!tol_ok(rel_tol) || !tol_ok(abs_tol)) {
        throw std::invalid_argument(
            "IntegratorConfig: tolerances must lie in (0, 1e-2]");
    }
    if (!(max_step > 0.0)) {
        throw std::invalid_argument("IntegratorConfig: max_step must be > 0");
    }
    if (!(t_max > 0.0)) {
        throw std::invalid_argument("IntegratorConfig: t_max must be > 0");
    }
}

namespace {

using State = std::array<double, 4>; // Re x, Im x, Re p, Im p

State pack(const PhasePoint& s) {
    return {s.x.real(), s.x.imag(), s.p.real(), s.p.imag()};
}

PhasePoint unpack(const State& y) {
    return {Complex(y[0], y[1]), Complex(y[2], y[3])};
}

// xdot = 2p, pdot = -V'(x) as a real 4-dimensional field.
State hamilton_rhs(const ScarfParams& params, const State& y) {
    const PhasePoint s = unpack(y);
    const Complex dV = eval_dV(params, s.x);
    return {2.0 * s.p.real(), 2.0 * s.p.imag(), -dV.real(), -dV.imag()};
}

// Dormand-Prince 5(4) pair; the fifth-order solution is advanced.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

struct StepResult {
    State y;
    double error; // scaled error norm; accept when <= 1
};

State axpy(const State& y, double h, std::initializer_list<
                                         std::pair<double, const State*>>
                                         terms) {
    State out = y;
    for (const auto& [coeff, k] : terms) {
        for (int i = 0; i < 4; ++i) out[i] += h * coeff * (*k)[i];
    }
    return out;
}

StepResult dopri5_step(const ScarfParams& params, const State& y,
                       const State& k1, double h, const IntegratorConfig& cfg,
                       State& k_last) {
    using D = Dopri5;
    const State k2 = hamilton_rhs(params, axpy(y, h, {{D::a21, &k1}}));
    const State k3 =
        hamilton_rhs(params, axpy(y, h, {{D::a31, &k1}, {D::a32, &k2}}));
    const State k4 = hamilton_rhs(
        params, axpy(y, h, {{D::a41, &k1}, {D::a42, &k2}, {D::a43, &k3}}));
    const State k5 = hamilton_rhs(
        params, axpy(y, h, {{D::a51, &k1}, {D::a52, &k2}, {D::a53, &k3},
                            {D::a54, &k4}}));
    const State k6 = hamilton_rhs(
        params, axpy(y, h, {{D::a61, &k1}, {D::a62, &k2}, {D::a63, &k3},
                            {D::a64, &k4}, {D::a65, &k5}}));
    const State y5 = axpy(y, h, {{D::b1, &k1}, {D::b3, &k3}, {D::b4, &k4},
                                 {D::b5, &k5}, {D::b6, &k6}});
    const State k7 = hamilton_rhs(params, y5);

    double err_sq = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double e = h * (D::e1 * k1[i] + D::e3 * k3[i] + D::e4 * k4[i] +
                              D::e5 * k5[i] + D::e6 * k6[i] + D::e7 * k7[i]);
        const double scale =
            cfg.abs_tol +
            cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err_sq += (e / scale) * (e / scale);
    }
    k_last = k7; // FSAL
    return {y5, std::sqrt(err_sq / 4.0)};
}

// Advances from t0 to t1 (either direction), invoking emit at every
// requested output time. The output times must be monotone in the
// direction of integration and within [t0, t1].
template <typename Emit>
void integrate_adaptive(const ScarfParams& params, const PhasePoint& initial,
                        double t0, double t1, const IntegratorConfig& cfg,
                        const std::vector<double>& out_times, Emit&& emit,
                        const Trajectory* partial_for_errors = nullptr) {
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    State y = pack(initial);
    double t = t0;
    std::size_t next_out = 0;

    auto halt = [&](const std::string& why) {
        Trajectory partial;
        if (partial_for_errors) partial = *partial_for_errors;
        throw IntegrationHalt("integrate: " + why + " at t = " +
                                  std::to_string(t),
                              std::move(partial));
    };

    while (next_out < out_times.size() &&
           std::abs(out_times[next_out] - t0) < 1e-15) {
        emit(t0, unpack(y));
        ++next_out;
    }
    if (span == 0.0) return;

    State k1;
    try {
        k1 = hamilton_rhs(params, y);
    } catch (const std::exception&) {
        halt("initial state at a potential pole");
    }

    double h_natural = std::min(cfg.max_step, span);
    const double h_floor = std::max(span, 1.0) * 1e-15;

    while (dir * (t1 - t) > 0.0) {
        // Land exactly on the next output time, then on t1.
        const double target =
            next_out < out_times.size() ? out_times[next_out] : t1;
        const bool clipped = h_natural >= std::abs(target - t);
        const double h = dir * std::min(h_natural, std::abs(target - t));

        StepResult step{};
        State k_next{};
        bool rejected_stage = false;
        try {
            step = dopri5_step(params, y, k1, h, cfg, k_next);
        } catch (const std::domain_error&) {
            rejected_stage = true; // stage hit the pole guard
        } catch (const std::invalid_argument&) {
            rejected_stage = true; // stage escaped to non-finite values
        }
        if (!rejected_stage) {
            for (double v : step.y) {
                if (!std::isfinite(v)) halt("state diverged (non-finite)");
            }
        }

        if (!rejected_stage && step.error <= 1.0) {
            y = step.y;
            k1 = k_next; // FSAL
            t = clipped ? target : t + h;
            if (next_out < out_times.size() && t == out_times[next_out]) {
                emit(t, unpack(y));
                ++next_out;
            }
            const double grow = std::min(
                5.0, std::max(0.2, 0.9 * std::pow(step.error + 1e-30, -0.2)));
            // Clipped steps do not shrink the working step size.
            if (!clipped || std::abs(h) * grow > h_natural) {
                h_natural = std::min(cfg.max_step, std::abs(h) * grow);
            }
        } else {
            const double shrink =
                rejected_stage
                    ? 0.1
                    : std::max(0.1, 0.9 * std::pow(step.error, -0.2));
            h_natural = std::abs(h) * std::min(0.9, shrink);
            if (h_natural < h_floor) halt("step underflow near a pole");
        }
    }
}

std::vector<double> uniform_times(double t_max, double dt) {
    std::size_t steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
    if (steps == 0) steps = 1;
    std::vector<double> times(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        times[k] = (k == steps) ? t_max : double(k) * (t_max / double(steps));
    }
    return times;
}

} // namespace

Trajectory integrate(const ScarfParams& params, const PhasePoint& initial,
                     const IntegratorConfig& cfg) {
    params.validate();
    cfg.validate();
    if (!is_finite(initial.x) || !is_finite(initial.p)) {
        throw std::invalid_argument("integrate: non-finite initial state");
    }

    double dt = cfg.dt_out > 0.0 ? cfg.dt_out : cfg.t_max / 4096.0;

    Trajectory traj;
    traj.source = TrajectorySource::OdeIntegration;
    traj.info.params = params;
    traj.info.initial = initial;
    try {
        traj.info.energy = initial.p * initial.p + eval_V(params, initial.x);
    } catch (const std::domain_error& e) {
        throw IntegrationHalt(std::string("integrate: ") + e.what(),
                              Trajectory{});
    }

    for (int refinement = 0;; ++refinement) {
        traj.samples.clear();
        bool too_coarse = false;
        integrate_adaptive(
            params, initial, 0.0, cfg.t_max, cfg, uniform_times(cfg.t_max, dt),
            [&](double t, const PhasePoint& s) {
                if (!too_coarse && !traj.samples.empty() &&
                    std::abs(s.x - traj.samples.back().x) >= 0.5) {
                    too_coarse = true;
                }
                traj.samples.push_back({t, s.x, s.p});
            },
            &traj);
        if (!too_coarse) break;
        if (refinement >= 10) {
            throw std::runtime_error(
                "integrate: output grid too coarse after 10 refinements");
        }
        dt *= 0.5;
    }
    traj.info.dt_used = traj.samples.size() > 1
                            ? traj.samples[1].t - traj.samples[0].t
                            : dt;
    return traj;
}

PhasePoint integrate_span(const ScarfParams& params, const PhasePoint& initial,
                          double t0, double t1, const IntegratorConfig& cfg) {
    PhasePoint out = initial;
    integrate_adaptive(params, initial, t0, t1, cfg, {t1},
                       [&](double, const PhasePoint& s) { out = s; });
    return out;
}

double energy_drift(const Trajectory& traj, const ScarfParams& params,
                    Complex E) {
    double drift = 0.0;
    for (const auto& s : traj.samples) {
        drift = std::max(drift,
                         std::abs(s.p * s.p + eval_V(params, s.x) - E));
    }
    return drift;
}

double ode_residual(const Trajectory& traj, const ScarfParams& params,
                    const IntegratorConfig& cfg) {
    double residual = 0.0;
    for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
        const auto& a = traj.samples[k];
        const auto& b = traj.samples[k + 1];
        const PhasePoint advanced =
            integrate_span(params, {a.x, a.p}, a.t, b.t, cfg);
        residual = std::max(residual, std::abs(advanced.x - b.x));
        residual = std::max(residual, std::abs(advanced.p - b.p));
    }
    return residual;
}

Trajectory pt_partner(const Trajectory& traj) {
    if (traj.info.params.delta.real() != 0.0) {
        throw std::domain_error(
            "pt_partner: requires a PT-symmetric scenario (Re delta = 0)");
    }
    // y(t) = -conj(x(-t)), q(t) = conj(p(-t)), shifted by t_max so the
    // partner lives on the original grid (the system is autonomous).
    Trajectory partner;
    partner.source = traj.source;
    partner.info = traj.info;
    partner.info.energy = std::conj(traj.info.energy);
    partner.info.label = traj.info.label.empty() ? "pt_partner"
                                                 : traj.info.label + "_pt";
    const auto& s = traj.samples;
    partner.samples.reserve(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& src = s[s.size() - 1 - k];
        partner.samples.push_back(
            {s[k].t, -std::conj(src.x), std::conj(src.p)});
    }
    if (!partner.samples.empty()) {
        partner.info.initial = {partner.samples.front().x,
                                partner.samples.front().p};
    }
    return partner;
}

} // namespace ptorbit
