#include "ptorbit/finite_diff.hpp"

#include <stdexcept>

namespace ptorbit {

namespace {

Complex eval_checked(const PhaseField& F, const PhasePoint& at) {
    const Complex v = F(at);
    if (!is_finite(v)) {
        throw std::runtime_error(
            "numeric_derivative: field non-finite at stencil point");
    }
    return v;
}

} // namespace

Complex numeric_derivative(const PhaseField& F, const PhasePoint& at,
                           Canonical wrt, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("numeric_derivative: step must be > 0");
    }
    PhasePoint plus = at;
    PhasePoint minus = at;
    if (wrt == Canonical::Position) {
        plus.x += h;
        minus.x -= h;
    } else {
        plus.p += h;
        minus.p -= h;
    }
    return (eval_checked(F, plus) - eval_checked(F, minus)) / (2.0 * h);
}

Complex poisson_bracket(const PhaseField& F, const PhaseField& G,
                        const PhasePoint& at, double h) {
    const Complex dF_dx = numeric_derivative(F, at, Canonical::Position, h);
    const Complex dF_dp = numeric_derivative(F, at, Canonical::Momentum, h);
    const Complex dG_dx = numeric_derivative(G, at, Canonical::Position, h);
    const Complex dG_dp = numeric_derivative(G, at, Canonical::Momentum, h);
    return dF_dx * dG_dp - dF_dp * dG_dx;
}

} // namespace ptorbit
