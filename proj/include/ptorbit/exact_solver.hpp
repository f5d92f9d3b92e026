#ifndef PTORBIT_EXACT_SOLVER_HPP
#define PTORBIT_EXACT_SOLVER_HPP

#include "ptorbit/factorization.hpp"
#include "ptorbit/trajectory.hpp"

namespace ptorbit {

/// Everything needed to evaluate the closed-form motion
///   sinh(alpha0 x/2) = (delta - c sqrt(-E) cos Theta) / E,
///   p = -c sin Theta / cosh(alpha0 x/2),   Theta(t) = theta0 + alpha t.
struct SolutionSpec {
    ScarfParams params;
    Complex E;
    Complex theta0;
    Complex c;      // c_of_E(params, E)
    Complex alpha;  // alpha0 sqrt(-E)
    Complex seed_w; // alpha0 x(0) / 2, seeds the branch tracker

    /// From an explicit theta0. The t = 0 position is placed on the
    /// principal asinh sheet.
    static SolutionSpec from_theta0(const ScarfParams& params, Complex E,
                                    Complex theta0);

    /// From a starting position; p0 = sign * sqrt(E - V(x0)), principal.
    static SolutionSpec from_position(const ScarfParams& params, Complex E,
                                      Complex x0, int momentum_sign);

    /// From an explicit phase point (checked on-shell).
    static SolutionSpec from_state(const ScarfParams& params, Complex E,
                                   const PhasePoint& state);
};

/// Branch context positioned at t = 0 for the given solution.
BranchContext initial_context(const SolutionSpec& spec);

/// x(t) through the branch-tracked master relation. The context must have
/// been advanced continuously from t = 0.
Complex position_at(const SolutionSpec& spec, double t, BranchContext& ctx);

/// p(t) from the branch-consistent position x_t = position_at(spec, t, .).
Complex momentum_at(const SolutionSpec& spec, double t, Complex x_t);

/// Uniform sampling of the closed-form motion on [0, t_max]. dt <= 0 picks
/// the default 1e-3 * 2 pi / |alpha|; the step is shrunk to divide t_max
/// exactly and halved (up to 10 times) whenever branch tracking or the
/// |dx| < 0.5 continuity bound demands it. The step actually used is
/// recorded in info.dt_used.
Trajectory sample_trajectory(const SolutionSpec& spec, double t_max,
                             double dt = 0.0);

} // namespace ptorbit

#endif
