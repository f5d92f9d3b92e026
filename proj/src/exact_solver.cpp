#include "ptorbit/exact_solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptorbit {

namespace {

SolutionSpec base_spec(const ScarfParams& params, Complex E) {
    params.validate();
    SolutionSpec spec;
    spec.params = params;
    spec.E = E;
    spec.c = c_of_E(params, E);
    spec.alpha = params.alpha0 * sqrt_neg(E);
    return spec;
}

Complex master_u(const SolutionSpec& spec, Complex theta) {
    // A+ + A- = 2 c cos Theta gives sinh(alpha0 x / 2) directly.
    return (spec.params.delta - spec.c * sqrt_neg(spec.E) * std::cos(theta)) /
           spec.E;
}

} // namespace

SolutionSpec SolutionSpec::from_theta0(const ScarfParams& params, Complex E,
                                       Complex theta0) {
    SolutionSpec spec = base_spec(params, E);
    spec.theta0 = theta0;
    spec.seed_w = asinh_principal(master_u(spec, theta0));
    return spec;
}

SolutionSpec SolutionSpec::from_position(const ScarfParams& params, Complex E,
                                         Complex x0, int momentum_sign) {
    const Complex p0 =
        double(momentum_sign >= 0 ? 1 : -1) * std::sqrt(E - eval_V(params, x0));
    return from_state(params, E, PhasePoint{x0, p0});
}

SolutionSpec SolutionSpec::from_state(const ScarfParams& params, Complex E,
                                      const PhasePoint& state) {
    SolutionSpec spec = base_spec(params, E);
    const FactorizationScheme scheme = scarf_scheme(params);
    spec.theta0 = theta0_from_initial(scheme, params, state, E);
    spec.seed_w = 0.5 * params.alpha0 * state.x;
    return spec;
}

BranchContext initial_context(const SolutionSpec& spec) {
    BranchContext ctx;
    ctx.previous_value = spec.seed_w;
    return ctx;
}

Complex position_at(const SolutionSpec& spec, double t, BranchContext& ctx) {
    const Complex theta = spec.theta0 + spec.alpha * t;
    const Complex w = asinh_tracked(master_u(spec, theta), ctx);
    return (2.0 / spec.params.alpha0) * w;
}

Complex momentum_at(const SolutionSpec& spec, double t, Complex x_t) {
    const Complex theta = spec.theta0 + spec.alpha * t;
    const Complex ch = std::cosh(0.5 * spec.params.alpha0 * x_t);
    if (std::abs(ch) < 1e-12) {
        throw std::domain_error("momentum_at: position at a potential pole");
    }
    return -spec.c * std::sin(theta) / ch;
}

Trajectory sample_trajectory(const SolutionSpec& spec, double t_max,
                             double dt) {
    if (t_max < 0.0) {
        throw std::invalid_argument("sample_trajectory: t_max must be >= 0");
    }
    if (dt <= 0.0) {
        const double period_scale = 2.0 * std::numbers::pi /
                                    std::max(std::abs(spec.alpha), 1e-12);
        dt = 1e-3 * period_scale;
    }

    Trajectory traj;
    traj.source = TrajectorySource::ExactFormula;
    traj.info.params = spec.params;
    traj.info.energy = spec.E;
    traj.info.theta0 = spec.theta0;

    if (t_max == 0.0) {
        BranchContext ctx = initial_context(spec);
        const Complex x = position_at(spec, 0.0, ctx);
        const Complex p = momentum_at(spec, 0.0, x);
        traj.samples.push_back({0.0, x, p});
        traj.info.initial = {x, p};
        traj.info.dt_used = dt;
        return traj;
    }

    // Shrink the step to divide t_max exactly, then halve while branch
    // tracking or the continuity bound rejects the grid.
    std::size_t steps =
        static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
    if (steps == 0) steps = 1;

    for (int refinement = 0;; ++refinement) {
        const double step = t_max / double(steps);
        traj.samples.clear();
        BranchContext ctx = initial_context(spec);
        bool too_coarse = false;
        try {
            for (std::size_t k = 0; k <= steps; ++k) {
                const double t = (k == steps) ? t_max : double(k) * step;
                const Complex x = position_at(spec, t, ctx);
                const Complex p = momentum_at(spec, t, x);
                if (!traj.samples.empty() &&
                    std::abs(x - traj.samples.back().x) >= 0.5) {
                    too_coarse = true;
                    break;
                }
                traj.samples.push_back({t, x, p});
            }
        } catch (const BranchStepError&) {
            too_coarse = true;
        }
        if (!too_coarse) {
            traj.info.dt_used = step;
            break;
        }
        if (refinement >= 10) {
            throw std::runtime_error(
                "sample_trajectory: grid still too coarse after 10 refinements");
        }
        steps *= 2;
    }

    traj.info.initial = {traj.samples.front().x, traj.samples.front().p};
    return traj;
}

} // namespace ptorbit
