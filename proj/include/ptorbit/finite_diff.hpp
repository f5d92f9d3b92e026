#ifndef PTORBIT_FINITE_DIFF_HPP
#define PTORBIT_FINITE_DIFF_HPP

#include <functional>

#include "ptorbit/complex_branch.hpp"

namespace ptorbit {

/// Scalar field over phase space, e.g. the Hamiltonian or a ladder function.
using PhaseField = std::function<Complex(const PhasePoint&)>;

enum class Canonical { Position, Momentum };

inline constexpr double kDefaultFdStep = 1e-5;

/// Central difference (F(+h) - F(-h)) / (2h) along the chosen canonical
/// variable, stepping in the real direction. For holomorphic F this is the
/// complex derivative with O(h^2) error. Throws std::runtime_error if F is
/// non-finite at a stencil point.
Complex numeric_derivative(const PhaseField& F, const PhasePoint& at,
                           Canonical wrt, double h = kDefaultFdStep);

/// {F,G} = dF/dx dG/dp - dF/dp dG/dx via numeric_derivative.
Complex poisson_bracket(const PhaseField& F, const PhaseField& G,
                        const PhasePoint& at, double h = kDefaultFdStep);

} // namespace ptorbit

#endif
