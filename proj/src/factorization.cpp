#include "ptorbit/factorization.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace ptorbit {

Complex sqrt_neg(Complex E) {
    return std::sqrt(-E);
}

FactorizationScheme scarf_scheme(const ScarfParams& params) {
    params.validate();
    const double a0 = params.alpha0;
    const Complex delta = params.delta;
    const double gamma0 = params.gamma0;

    FactorizationScheme s;
    s.g = [a0](Complex x) { return std::sinh(0.5 * a0 * x); };
    s.dg = [a0](Complex x) { return 0.5 * a0 * std::cosh(0.5 * a0 * x); };
    s.f = [a0](Complex x) { return std::cosh(0.5 * a0 * x); };
    s.df = [a0](Complex x) { return 0.5 * a0 * std::sinh(0.5 * a0 * x); };
    s.varphi = [](Complex) { return Complex(0.0, 0.0); };
    s.dvarphi = [](Complex) { return Complex(0.0, 0.0); };
    s.phiH = [delta](Complex E) { return delta / sqrt_neg(E); };
    // d/dE [delta (-E)^(-1/2)] = (delta/2) (-E)^(-3/2)
    s.dphiH = [delta](Complex E) {
        const Complex r = sqrt_neg(E);
        return 0.5 * delta / (r * r * r);
    };
    s.alphaH = [a0](Complex E) { return a0 * sqrt_neg(E); };
    s.gammaH = [gamma0, delta](Complex E) {
        return -gamma0 + delta * delta / E;
    };
    return s;
}

Complex c_of_E(const ScarfParams& params, Complex E) {
    if (E == 0.0) {
        throw std::domain_error("c_of_E: E = 0 divides the coupling term");
    }
    return std::sqrt(E + params.gamma0 - params.delta * params.delta / E);
}

namespace {

void require_on_shell(const ScarfParams& params, const PhasePoint& state,
                      Complex E) {
    const Complex H = state.p * state.p + eval_V(params, state.x);
    const double off = std::abs(H - E);
    if (off > 1e-8 * (1.0 + std::abs(E))) {
        std::ostringstream msg;
        msg << "state off the energy shell: |H - E| = " << off;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

std::pair<Complex, Complex> ladder_values(const FactorizationScheme& scheme,
                                          const ScarfParams& params,
                                          const PhasePoint& state, Complex E) {
    require_on_shell(params, state, E);
    const Complex r = sqrt_neg(E);
    const Complex common =
        r * scheme.g(state.x) + scheme.varphi(state.x) + scheme.phiH(E);
    const Complex ifp = Complex(0.0, 1.0) * scheme.f(state.x) * state.p;
    return {-ifp + common, ifp + common};
}

Complex theta0_from_initial(const FactorizationScheme& scheme,
                            const ScarfParams& params, const PhasePoint& state,
                            Complex E) {
    const Complex c = c_of_E(params, E);
    const double scale = 1.0 + std::abs(E) + params.gamma0;
    if (std::abs(c) * std::abs(c) <= 1e-12 * scale) {
        throw std::domain_error(
            "theta0_from_initial: degenerate energy, c(E) = 0");
    }
    const auto [a_plus, a_minus] = ladder_values(scheme, params, state, E);
    (void)a_minus;
    return Complex(0.0, -1.0) * std::log(a_plus / c);
}

std::pair<Complex, Complex> q_values(const FactorizationScheme& scheme,
                                     const ScarfParams& params,
                                     const PhasePoint& state, Complex E,
                                     double t) {
    const auto [a_plus, a_minus] = ladder_values(scheme, params, state, E);
    const Complex phase = Complex(0.0, 1.0) * scheme.alphaH(E) * t;
    return {a_plus * std::exp(-phase), a_minus * std::exp(phase)};
}

PhaseField ladder_field(const FactorizationScheme& scheme,
                        const ScarfParams& params, int sign) {
    const ScarfParams p = params;
    const FactorizationScheme s = scheme;
    const double sgn = sign >= 0 ? 1.0 : -1.0;
    return [p, s, sgn](const PhasePoint& state) {
        const Complex H = state.p * state.p + eval_V(p, state.x);
        return Complex(0.0, -sgn) * s.f(state.x) * state.p +
               sqrt_neg(H) * s.g(state.x) + s.varphi(state.x) + s.phiH(H);
    };
}

Complex beta_rhs(const FactorizationScheme& scheme, const ScarfParams& params,
                 Complex x, Complex E) {
    // Deformed-algebra coefficient under the negative-energy convention;
    // re-derived from the sqrt(-H) ladder, which flips the sign of the
    // g (2 f' V + f V') / sqrt(-H) term relative to the sqrt(H) printing.
    const Complex r = sqrt_neg(E);
    const Complex f = scheme.f(x), df = scheme.df(x);
    const Complex g = scheme.g(x), dg = scheme.dg(x);
    const Complex V = eval_V(params, x);
    const Complex dV = eval_dV(params, x);
    const Complex dphi = scheme.dphiH(E);
    return 2.0 * r * (df * g - f * dg) + (g / r) * (2.0 * df * V + f * dV) +
           4.0 * df * dphi * (E - V) -
           2.0 * f * (scheme.dvarphi(x) + dphi * dV);
}

bool VerifyReport::pass() const {
    const VerifyThresholds th;
    return eq8_max < th.determining && eq9_max < th.determining &&
           bracket_plus_max < th.bracket && bracket_minus_max < th.bracket &&
           bracket_pm_max < th.bracket && canonical_residual < th.canonical &&
           product_max < th.product;
}

std::string VerifyReport::to_table() const {
    const VerifyThresholds th;
    std::ostringstream out;
    out.setf(std::ios::scientific);
    out.precision(3);
    auto row = [&](const char* name, double value, double threshold) {
        out << "  " << name << "  " << value << "  (threshold " << threshold
            << ")  " << (value < threshold ? "ok" : "FAIL") << "\n";
    };
    out << "residual report\n";
    row("determining eq. f        ", eq8_max, th.determining);
    row("determining eq. f V'     ", eq9_max, th.determining);
    row("{A+,H} - i alpha A+      ", bracket_plus_max, th.bracket);
    row("{A-,H} + i alpha A-      ", bracket_minus_max, th.bracket);
    row("{A+,A-} + i beta         ", bracket_pm_max, th.bracket);
    row("{x,p} - 1                ", canonical_residual, th.canonical);
    row("A+ A- product (relative) ", product_max, th.product);
    out << "  skipped samples near poles: " << skipped_samples << "\n";
    return out.str();
}

VerifyReport verify_scheme(const FactorizationScheme& scheme,
                           const ScarfParams& params,
                           std::span<const Complex> x_samples,
                           std::span<const Complex> E_samples,
                           std::size_t onshell_points, unsigned seed) {
    VerifyReport report;

    for (Complex E : E_samples) {
        if (E == 0.0) {
            ++report.skipped_samples;
            continue;
        }
        const Complex r = sqrt_neg(E);
        const Complex alpha = scheme.alphaH(E);
        for (Complex x : x_samples) {
            Complex V, dV;
            try {
                V = eval_V(params, x);
                dV = eval_dV(params, x);
            } catch (const std::domain_error&) {
                ++report.skipped_samples;
                continue;
            }
            const Complex f = scheme.f(x), df = scheme.df(x);
            const Complex g = scheme.g(x), dg = scheme.dg(x);

            const Complex res8 =
                f - (2.0 / alpha) * (scheme.dvarphi(x) + dg * r);
            const Complex res9 =
                f * dV - 2.0 * df * (E - V) -
                alpha * (g * r + scheme.varphi(x) + scheme.phiH(E));
            report.eq8_max = std::max(report.eq8_max, std::abs(res8));
            report.eq9_max = std::max(report.eq9_max, std::abs(res9));
        }
    }

    // Canonical bracket sanity row.
    const PhaseField coord = [](const PhasePoint& s) { return s.x; };
    const PhaseField momentum = [](const PhasePoint& s) { return s.p; };
    const PhasePoint ref{Complex(0.3, 0.1), Complex(0.2, -0.1)};
    report.canonical_residual =
        std::abs(poisson_bracket(coord, momentum, ref) - 1.0);

    // Deformed algebra at random on-shell points of the first energy shell.
    if (!E_samples.empty() && onshell_points > 0) {
        const Complex E = E_samples.front();
        const Complex alpha = scheme.alphaH(E);
        const Complex target = E + params.gamma0 -
                               params.delta * params.delta / E;
        const PhaseField a_plus = ladder_field(scheme, params, +1);
        const PhaseField a_minus = ladder_field(scheme, params, -1);
        const PhaseField hamiltonian = [params](const PhasePoint& s) {
            return s.p * s.p + eval_V(params, s.x);
        };

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> re_x(-1.5, 1.5);
        std::uniform_real_distribution<double> im_x(-0.9, 0.9);
        std::uniform_int_distribution<int> sign(0, 1);
        std::size_t accepted = 0;
        while (accepted < onshell_points) {
            const Complex x(re_x(rng), im_x(rng));
            Complex V;
            try {
                V = eval_V(params, x);
            } catch (const std::domain_error&) {
                continue;
            }
            Complex p = std::sqrt(E - V);
            if (sign(rng)) p = -p;
            const PhasePoint state{x, p};
            ++accepted;

            const auto [av_plus, av_minus] =
                ladder_values(scheme, params, state, E);
            const double rel =
                std::abs(av_plus * av_minus - target) / (1.0 + std::abs(target));
            report.product_max = std::max(report.product_max, rel);

            const Complex i(0.0, 1.0);
            const Complex bp =
                poisson_bracket(a_plus, hamiltonian, state) - i * alpha * av_plus;
            const Complex bm =
                poisson_bracket(a_minus, hamiltonian, state) +
                i * alpha * av_minus;
            const Complex bpm = poisson_bracket(a_plus, a_minus, state) +
                                i * beta_rhs(scheme, params, x, E);
            report.bracket_plus_max =
                std::max(report.bracket_plus_max, std::abs(bp));
            report.bracket_minus_max =
                std::max(report.bracket_minus_max, std::abs(bm));
            report.bracket_pm_max =
                std::max(report.bracket_pm_max, std::abs(bpm));
        }
    }
    return report;
}

} // namespace ptorbit
