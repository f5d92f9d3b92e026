#include "ptorbit/scarf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptorbit {

namespace {

constexpr double kPoleGuard = 1e-12; // floor on |cosh(alpha0 x / 2)|

struct SechTanh {
    Complex sech;
    Complex tanh;
};

SechTanh sech_tanh(const ScarfParams& params, Complex x) {
    const Complex s = 0.5 * params.alpha0 * x;
    const Complex ch = std::cosh(s);
    if (std::abs(ch) < kPoleGuard) {
        throw std::domain_error("eval_V: x too close to a potential pole");
    }
    return {1.0 / ch, std::sinh(s) / ch};
}

} // namespace

void ScarfParams::validate() const {
    if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
        throw std::invalid_argument("ScarfParams: alpha0 must be positive");
    }
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
        throw std::invalid_argument("ScarfParams: gamma0 must be positive");
    }
    if (!is_finite(delta)) {
        throw std::invalid_argument("ScarfParams: delta must be finite");
    }
}

std::string to_string(PTPhase phase) {
    switch (phase) {
        case PTPhase::RealPotential: return "RealPotential";
        case PTPhase::PTUnbroken: return "PTUnbroken";
        case PTPhase::PTBroken: return "PTBroken";
        case PTPhase::NonPTSymmetric: return "NonPTSymmetric";
    }
    return "?";
}

Complex eval_V(const ScarfParams& params, Complex x) {
    if (!is_finite(x)) {
        throw std::invalid_argument("eval_V: non-finite position");
    }
    const auto [sech, tanh] = sech_tanh(params, x);
    return -params.gamma0 * sech * sech + 2.0 * params.delta * sech * tanh;
}

Complex eval_dV(const ScarfParams& params, Complex x) {
    if (!is_finite(x)) {
        throw std::invalid_argument("eval_dV: non-finite position");
    }
    const auto [sech, tanh] = sech_tanh(params, x);
    return params.gamma0 * params.alpha0 * sech * sech * tanh +
           params.delta * params.alpha0 * sech * (sech * sech - tanh * tanh);
}

TurningPointSet turning_points(const ScarfParams& params, Complex E,
                               int branch_window) {
    params.validate();
    if (E == 0.0) {
        throw std::domain_error("turning_points: quadratic degenerates at E = 0");
    }

    // E - V = 0 with u = sinh(alpha0 x / 2):
    //   E u^2 - 2 delta u + (E + gamma0) = 0.
    const Complex disc = params.delta * params.delta - E * (E + params.gamma0);
    const Complex root = std::sqrt(disc);
    const Complex u1 = (params.delta + root) / E;
    const Complex u2 = (params.delta - root) / E;

    TurningPointSet set;
    set.degenerate_root = std::abs(disc) < 1e-12;

    const double pi = std::numbers::pi;
    const double scale = 2.0 / params.alpha0;
    for (int which = 1; which <= 2; ++which) {
        const Complex u = (which == 1) ? u1 : u2;
        const Complex w0 = asinh_principal(u);
        for (int n = -branch_window; n <= branch_window; ++n) {
            const Complex w =
                ((n % 2 == 0) ? w0 : -w0) + Complex(0.0, n * pi);
            set.points.push_back({scale * w, which, n});
        }
    }

    std::sort(set.points.begin(), set.points.end(),
              [](const TurningPoint& a, const TurningPoint& b) {
                  const double ia = std::abs(a.location.imag());
                  const double ib = std::abs(b.location.imag());
                  if (ia != ib) return ia < ib;
                  return a.location.real() < b.location.real();
              });
    return set;
}

EnergyWindow energy_window(const ScarfParams& params) {
    params.validate();
    const PTPhase phase = classify_phase(params);
    const double g = params.gamma0;

    EnergyWindow window;
    switch (phase) {
        case PTPhase::RealPotential: {
            const double dR = params.delta.real();
            const double s = std::sqrt(g * g + 4.0 * dR * dR);
            window.lower = Complex((-g - s) / 2.0, 0.0);
            window.upper = Complex(0.0, 0.0);
            window.kind = EnergyWindow::Kind::RealInterval;
            break;
        }
        case PTPhase::PTUnbroken: {
            const double dI = params.delta.imag();
            const double s = std::sqrt(g * g - 4.0 * dI * dI);
            window.lower = Complex((-g - s) / 2.0, 0.0);
            window.upper = Complex((-g + s) / 2.0, 0.0);
            window.kind = EnergyWindow::Kind::RealInterval;
            break;
        }
        case PTPhase::PTBroken: {
            const double dI = params.delta.imag();
            const double s = std::sqrt(4.0 * dI * dI - g * g);
            window.lower = Complex(-g / 2.0, -s / 2.0);
            window.upper = Complex(-g / 2.0, s / 2.0);
            window.kind = EnergyWindow::Kind::ComplexConjugatePair;
            break;
        }
        case PTPhase::NonPTSymmetric:
            throw std::domain_error(
                "energy_window: unsupported for fully complex delta");
    }
    return window;
}

bool EnergyWindow::contains(Complex E, double tol) const {
    if (kind == Kind::RealInterval) {
        if (std::abs(E.imag()) > tol) return false;
        return E.real() >= lower.real() - tol && E.real() <= upper.real() + tol;
    }
    // Broken phase: the segment between the conjugate endpoints.
    if (std::abs(E.real() - lower.real()) > tol) return false;
    return E.imag() >= lower.imag() - tol && E.imag() <= upper.imag() + tol;
}

bool EnergyWindow::on_boundary(Complex E, double tol) const {
    return std::abs(E - lower) <= tol || std::abs(E - upper) <= tol;
}

PTPhase classify_phase(const ScarfParams& params) {
    const double dR = params.delta.real();
    const double dI = params.delta.imag();
    if (dI == 0.0) return PTPhase::RealPotential;
    if (dR != 0.0) return PTPhase::NonPTSymmetric;
    return (params.gamma0 >= 2.0 * std::abs(dI)) ? PTPhase::PTUnbroken
                                                 : PTPhase::PTBroken;
}

} // namespace ptorbit
