#ifndef PTORBIT_ODE_HPP
#define PTORBIT_ODE_HPP

#include <stdexcept>

#include "ptorbit/trajectory.hpp"

namespace ptorbit {

/// Raised when the stepper cannot continue (step underflow near a pole of
/// the potential, or the state left the finite range). Carries whatever was
/// integrated so far.
class IntegrationHalt : public std::runtime_error {
  public:
    IntegrationHalt(std::string what, Trajectory partial)
        : std::runtime_error(std::move(what)), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

  private:
    Trajectory partial_;
};

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = 1e-2;
    double t_max = 10.0;
    double dt_out = 0.0; // output grid spacing; <= 0 picks t_max / 4096

    void validate() const; // tolerances in (0, 1e-2], t_max > 0
};

/// Hamilton's equations xdot = 2p, pdot = -V'(x) integrated as a 4-real-
/// dimensional system with an adaptive embedded Dormand-Prince 5(4) pair,
/// resampled onto a uniform grid. Halts with a std::runtime_error near
/// potential poles (step underflow) or on non-finite state.
Trajectory integrate(const ScarfParams& params, const PhasePoint& initial,
                     const IntegratorConfig& cfg);

/// Single adaptive integration from t0 to t1 (either direction), returning
/// the final state only. Used for residual and reversibility checks.
PhasePoint integrate_span(const ScarfParams& params, const PhasePoint& initial,
                          double t0, double t1, const IntegratorConfig& cfg);

/// max over samples of |p^2 + V(x) - E|.
double energy_drift(const Trajectory& traj, const ScarfParams& params,
                    Complex E);

/// How far the sampled path is from being a solution of Hamilton's
/// equations: re-integrates across each sample interval and takes the
/// largest deviation. A true solution scores at integrator accuracy.
double ode_residual(const Trajectory& traj, const ScarfParams& params,
                    const IntegratorConfig& cfg);

/// Parity-time image of a sampled path: y(t) = -conj(x(-t)),
/// q(t) = conj(p(-t)), time-shifted back onto the original grid. For
/// PT-symmetric parameters (Re delta = 0) this is itself a solution.
/// Throws std::domain_error otherwise.
Trajectory pt_partner(const Trajectory& traj);

} // namespace ptorbit

#endif
