#ifndef PTORBIT_SCARF_HPP
#define PTORBIT_SCARF_HPP

#include <string>
#include <vector>

#include "ptorbit/complex_branch.hpp"

namespace ptorbit {

/// Coupling constants of the complexified Scarf II potential
///   V(x) = -gamma0 sech^2(alpha0 x / 2) + 2 delta sech(alpha0 x / 2) tanh(alpha0 x / 2).
struct ScarfParams {
    double alpha0 = 2.0;  // inverse length scale, > 0
    double gamma0 = 6.0;  // well depth, > 0
    Complex delta{0.0, 0.0};

    void validate() const; // throws std::invalid_argument
};

/// Symmetry class of the potential, decided by delta and the well depth.
enum class PTPhase {
    RealPotential,  // Im delta = 0
    PTUnbroken,     // Re delta = 0, gamma0 >= 2|Im delta|
    PTBroken,       // Re delta = 0, gamma0 <  2|Im delta|
    NonPTSymmetric, // Re delta != 0 and Im delta != 0
};

std::string to_string(PTPhase phase);

/// Classically allowed energies: a real interval in the real and unbroken
/// cases, a complex-conjugate endpoint pair in the broken case.
struct EnergyWindow {
    enum class Kind { RealInterval, ComplexConjugatePair };
    Complex lower;
    Complex upper;
    Kind kind = Kind::RealInterval;

    /// True if E lies within the window (interior or boundary, tolerance tol).
    bool contains(Complex E, double tol = 1e-9) const;
    /// True if E sits on a window endpoint (degenerate orbit, c(E) = 0).
    bool on_boundary(Complex E, double tol = 1e-9) const;
};

struct TurningPoint {
    Complex location;
    int u_root;  // which quadratic root in u = sinh(alpha0 x / 2): 1 or 2
    int branch;  // asinh branch index n
};

struct TurningPointSet {
    std::vector<TurningPoint> points;
    bool degenerate_root = false; // quadratic discriminant at zero
};

Complex eval_V(const ScarfParams& params, Complex x);

/// Analytic V'(x):
///   gamma0 alpha0 sech^2 tanh + delta alpha0 sech (sech^2 - tanh^2),
/// arguments alpha0 x / 2 throughout.
Complex eval_dV(const ScarfParams& params, Complex x);

/// All roots of E - V(x) = 0 with branch index |n| <= branch_window,
/// sorted by |Im x| then Re x. Reduces to the quadratic
///   E u^2 - 2 delta u + (E + gamma0) = 0,  u = sinh(alpha0 x / 2).
TurningPointSet turning_points(const ScarfParams& params, Complex E,
                               int branch_window = 3);

/// Classically allowed energy range (roots of E + gamma0 - delta^2/E = 0
/// restricted to the relevant case). Throws std::domain_error for
/// NonPTSymmetric parameters.
EnergyWindow energy_window(const ScarfParams& params);

PTPhase classify_phase(const ScarfParams& params);

} // namespace ptorbit

#endif
