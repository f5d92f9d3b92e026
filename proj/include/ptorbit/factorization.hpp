#ifndef PTORBIT_FACTORIZATION_HPP
#define PTORBIT_FACTORIZATION_HPP

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptorbit/finite_diff.hpp"
#include "ptorbit/scarf.hpp"

namespace ptorbit {

/// Principal-branch sqrt(-E); every square root of the Hamiltonian in the
/// ladder construction uses the negative-energy convention.
Complex sqrt_neg(Complex E);

/// The ladder construction H = A+ A- + gamma(H) with
///   A+- = -+ i f(x) p + sqrt(-H) g(x) + varphi(x) + phiH(H).
/// Position functions come with their analytic derivatives so residual
/// checks do not stack finite-difference error.
struct FactorizationScheme {
    std::function<Complex(Complex)> f, df;
    std::function<Complex(Complex)> g, dg;
    std::function<Complex(Complex)> varphi, dvarphi;
    std::function<Complex(Complex)> phiH, dphiH; // of the energy
    std::function<Complex(Complex)> alphaH;      // rotation frequency
    std::function<Complex(Complex)> gammaH;      // H = A+ A- + gamma(H)
};

/// Closed-form scheme for Scarf II: g = sinh(alpha0 x/2), f = cosh(alpha0 x/2),
/// varphi = 0, phiH = delta / sqrt(-H), alphaH = alpha0 sqrt(-H),
/// gammaH = -gamma0 + delta^2 / H.
FactorizationScheme scarf_scheme(const ScarfParams& params);

/// c(E) = sqrt(E + gamma0 - delta^2 / E), principal branch.
/// Zero exactly at the energy-window endpoints. Throws on E = 0.
Complex c_of_E(const ScarfParams& params, Complex E);

/// A+- evaluated at an on-shell phase point with sqrt(-E) principal.
/// Throws std::invalid_argument if |H(state) - E| > 1e-8 (1 + |E|).
std::pair<Complex, Complex> ladder_values(const FactorizationScheme& scheme,
                                          const ScarfParams& params,
                                          const PhasePoint& state, Complex E);

/// theta0 = -i log(A+(state) / c(E)), principal log. theta0 is complex in
/// general; it is fixed uniquely by the initial state.
Complex theta0_from_initial(const FactorizationScheme& scheme,
                            const ScarfParams& params, const PhasePoint& state,
                            Complex E);

/// Time-dependent integrals of motion Q+- = A+- exp(-+ i alpha(E) t).
std::pair<Complex, Complex> q_values(const FactorizationScheme& scheme,
                                     const ScarfParams& params,
                                     const PhasePoint& state, Complex E,
                                     double t);

/// A+- as genuine phase-space fields (H = p^2 + V(x) inside), for Poisson
/// bracket checks. sign = +1 for A+, -1 for A-.
PhaseField ladder_field(const FactorizationScheme& scheme,
                        const ScarfParams& params, int sign);

/// Right-hand side of the deformed-algebra bracket {A+,A-} = -i beta,
/// evaluated under the sqrt(-H) convention at position x and energy E.
Complex beta_rhs(const FactorizationScheme& scheme, const ScarfParams& params,
                 Complex x, Complex E);

/// Max residuals of the determining equations and the deformed algebra.
struct VerifyReport {
    double eq8_max = 0.0;           // f - (2/alpha)(varphi' + g' sqrt(-E))
    double eq9_max = 0.0;           // f V' - 2 f'(E - V) - alpha (g sqrt(-E) + varphi + phiH)
    double bracket_plus_max = 0.0;  // {A+,H} - i alpha A+
    double bracket_minus_max = 0.0; // {A-,H} + i alpha A-
    double bracket_pm_max = 0.0;    // {A+,A-} + i beta
    double canonical_residual = 0.0; // {x,p} - 1
    double product_max = 0.0;        // relative residual of A+ A- = E + gamma0 - delta^2/E
    std::size_t skipped_samples = 0; // samples discarded near potential poles

    bool pass() const;
    std::string to_table() const;
};

/// Residual thresholds used by VerifyReport::pass and the verify command.
struct VerifyThresholds {
    double determining = 1e-8; // eq8/eq9
    double bracket = 1e-5;
    double canonical = 1e-8;
    double product = 1e-10;
};

VerifyReport verify_scheme(const FactorizationScheme& scheme,
                           const ScarfParams& params,
                           std::span<const Complex> x_samples,
                           std::span<const Complex> E_samples,
                           std::size_t onshell_points = 50,
                           unsigned seed = 20100901);

} // namespace ptorbit

#endif
