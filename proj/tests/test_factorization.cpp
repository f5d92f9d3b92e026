#include <doctest.h>

#include <cmath>
#include <random>

#include "ptorbit/factorization.hpp"
#include "ptorbit/ode.hpp"

using namespace ptorbit;

namespace {

const ScarfParams fig1_params{2.0, 6.0, Complex(0.0, 2.0)};

PhasePoint random_onshell(const ScarfParams& params, Complex E,
                          std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-1.5, 1.5);
    std::uniform_real_distribution<double> im(-0.9, 0.9);
    std::uniform_int_distribution<int> flip(0, 1);
    for (;;) {
        const Complex x(re(rng), im(rng));
        Complex V;
        try {
            V = eval_V(params, x);
        } catch (const std::domain_error&) {
            continue;
        }
        Complex p = std::sqrt(E - V);
        if (flip(rng)) p = -p;
        return {x, p};
    }
}

} // namespace

TEST_CASE("scarf_scheme closed forms") {
    const FactorizationScheme s = scarf_scheme(fig1_params);
    CHECK(std::abs(s.f({0.0, 0.0}) - 1.0) < 1e-15);
    CHECK(std::abs(s.g({0.0, 0.0})) < 1e-15);
    CHECK(std::abs(s.varphi({0.7, 0.3})) == 0.0);

    // gamma(H) at E = -3: -6 + (-4)/(-3) = -4.66667.
    CHECK(std::abs(s.gammaH({-3.0, 0.0}) - Complex(-14.0 / 3.0, 0.0)) < 1e-12);
    // alpha(H) at E = -3 with alpha0 = 2: 2 sqrt(3).
    CHECK(std::abs(s.alphaH({-3.0, 0.0}) - Complex(2.0 * std::sqrt(3.0), 0.0)) <
          1e-12);
    // phiH = delta / sqrt(-H).
    CHECK(std::abs(s.phiH({-4.0, 0.0}) - Complex(0.0, 1.0)) < 1e-15);
}

TEST_CASE("c_of_E values and window endpoints") {
    CHECK(std::abs(c_of_E(fig1_params, {-3.0, 0.0}) -
                   Complex(std::sqrt(5.0 / 3.0), 0.0)) < 1e-12);

    const EnergyWindow w = energy_window(fig1_params);
    CHECK(std::abs(c_of_E(fig1_params, w.upper)) < 1e-5);
    CHECK(std::abs(c_of_E(fig1_params, w.lower)) < 1e-5);

    const ScarfParams real_well{2.0, 5.0, Complex(0.0, 0.0)};
    CHECK(std::abs(c_of_E(real_well, {-5.0, 0.0})) < 1e-12);

    CHECK_THROWS_AS(c_of_E(fig1_params, {0.0, 0.0}), std::domain_error);
}

TEST_CASE("ladder values at the well bottom of a real well") {
    const ScarfParams real_well{2.0, 4.0, Complex(0.0, 0.0)};
    const FactorizationScheme s = scarf_scheme(real_well);
    const PhasePoint bottom{Complex(0.0, 0.0), Complex(0.0, 0.0)};
    const auto [ap, am] =
        ladder_values(s, real_well, bottom, {-real_well.gamma0, 0.0});
    CHECK(std::abs(ap) < 1e-12);
    CHECK(std::abs(am) < 1e-12);
}

TEST_CASE("product identity A+ A- = E + gamma0 - delta^2/E") {
    const FactorizationScheme s = scarf_scheme(fig1_params);
    const Complex E(-3.0, 0.0);
    const Complex target = E + fig1_params.gamma0 -
                           fig1_params.delta * fig1_params.delta / E;
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100; ++i) {
        const PhasePoint state = random_onshell(fig1_params, E, rng);
        const auto [ap, am] = ladder_values(s, fig1_params, state, E);
        CHECK(std::abs(ap * am - target) < 1e-10 * (1.0 + std::abs(target)));
    }
}

TEST_CASE("ladder values reject off-shell states") {
    const FactorizationScheme s = scarf_scheme(fig1_params);
    const PhasePoint off{Complex(0.2, 0.1), Complex(1.0, 0.0)};
    CHECK_THROWS_AS(ladder_values(s, fig1_params, off, {-3.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("|A+-| = |c| at a turning point") {
    const FactorizationScheme s = scarf_scheme(fig1_params);
    const Complex E(-3.0, 0.0);
    const Complex c = c_of_E(fig1_params, E);
    // p = 0 at the reference turning-point digits; the shell residual at
    // those rounded digits is ~1e-4, so compare at the same scale.
    const Complex r = sqrt_neg(E);
    const Complex a =
        r * s.g(Complex(0.781368, -0.528945)) + s.phiH(E);
    CHECK(std::abs(std::abs(a) - std::abs(c)) < 1e-4);
}

TEST_CASE("theta0 at turning points") {
    const ScarfParams params = fig1_params;
    const FactorizationScheme s = scarf_scheme(params);
    const Complex E(-3.0, 0.0);
    const Complex c = c_of_E(params, E);

    // Exact turning point: u solves the quadratic, p = 0.
    const Complex disc =
        params.delta * params.delta - E * (E + params.gamma0);
    const Complex u = (params.delta - std::sqrt(disc)) / E;
    const Complex x = (2.0 / params.alpha0) * asinh_principal(u);
    const PhasePoint state{x, Complex(0.0, 0.0)};

    const auto [ap, am] = ladder_values(s, params, state, E);
    (void)am;
    const Complex theta0 = theta0_from_initial(s, params, state, E);
    if (std::abs(ap - c) < 1e-9) {
        CHECK(std::abs(theta0) < 1e-9);
    } else {
        CHECK(std::abs(ap + c) < 1e-9);
        CHECK(std::abs(std::abs(theta0) - std::acos(-1.0)) < 1e-9);
    }
}

TEST_CASE("theta0 rejects degenerate energies") {
    const FactorizationScheme s = scarf_scheme(fig1_params);
    const EnergyWindow w = energy_window(fig1_params);
    const Complex x(0.1, 0.2);
    const PhasePoint state{x, std::sqrt(w.upper - eval_V(fig1_params, x))};
    CHECK_THROWS_AS(theta0_from_initial(s, fig1_params, state, w.upper),
                    std::domain_error);
}

TEST_CASE("Q values: t = 0 and unit-modulus evolution") {
    const FactorizationScheme s = scarf_scheme(fig1_params);
    const Complex E(-3.0, 0.0);
    std::mt19937_64 rng(77);
    const PhasePoint state = random_onshell(fig1_params, E, rng);

    const auto [ap, am] = ladder_values(s, fig1_params, state, E);
    const auto [q0p, q0m] = q_values(s, fig1_params, state, E, 0.0);
    CHECK(std::abs(q0p - ap) < 1e-14);
    CHECK(std::abs(q0m - am) < 1e-14);

    // |Q+ Q-| = |A+ A-| for real alpha t.
    const auto [qp, qm] = q_values(s, fig1_params, state, E, 1.7);
    CHECK(std::abs(std::abs(qp * qm) - std::abs(ap * am)) < 1e-12);
}

TEST_CASE("Q values stay constant along an integrated trajectory") {
    const Complex E(-3.0, 0.0);
    const FactorizationScheme s = scarf_scheme(fig1_params);
    const Complex x0(0.3, 0.5);
    const Complex p0 = std::sqrt(E - eval_V(fig1_params, x0));

    IntegratorConfig cfg;
    cfg.t_max = 10.0;
    cfg.dt_out = 0.01;
    const Trajectory traj = integrate(fig1_params, {x0, p0}, cfg);

    const auto [q0p, q0m] = q_values(s, fig1_params, {x0, p0}, E, 0.0);
    double worst = 0.0;
    for (const auto& sample : traj.samples) {
        const auto [qp, qm] =
            q_values(s, fig1_params, {sample.x, sample.p}, E, sample.t);
        worst = std::max(worst, std::abs(qp - q0p));
        worst = std::max(worst, std::abs(qm - q0m));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("deformed algebra brackets at random on-shell points") {
    const FactorizationScheme s = scarf_scheme(fig1_params);
    const Complex E(-3.0, 0.0);
    const Complex alpha = s.alphaH(E);
    const PhaseField a_plus = ladder_field(s, fig1_params, +1);
    const PhaseField a_minus = ladder_field(s, fig1_params, -1);
    const PhaseField H = [](const PhasePoint& st) {
        return st.p * st.p + eval_V(fig1_params, st.x);
    };
    const Complex i(0.0, 1.0);

    std::mt19937_64 rng(303);
    for (int k = 0; k < 50; ++k) {
        const PhasePoint state = random_onshell(fig1_params, E, rng);
        const auto [ap, am] = ladder_values(s, fig1_params, state, E);
        CHECK(std::abs(poisson_bracket(a_plus, H, state) - i * alpha * ap) <
              1e-5);
        CHECK(std::abs(poisson_bracket(a_minus, H, state) + i * alpha * am) <
              1e-5);
        CHECK(std::abs(poisson_bracket(a_plus, a_minus, state) +
                       i * beta_rhs(s, fig1_params, state.x, E)) < 1e-5);
    }
}

TEST_CASE("verify_scheme: closed forms pass the standard grid") {
    const FactorizationScheme s = scarf_scheme(fig1_params);
    std::vector<Complex> xs;
    for (int i = 0; i <= 20; ++i) {
        xs.push_back(Complex(-2.0 + 4.0 * double(i) / 20.0, 0.0));
    }
    const std::vector<Complex> energies = {{-1.0, 0.0}, {-2.0, 0.0},
                                           {-3.0, 0.0}};
    const VerifyReport report = verify_scheme(s, fig1_params, xs, energies);
    CHECK(report.eq8_max < 1e-8);
    CHECK(report.eq9_max < 1e-8);
    CHECK(report.bracket_plus_max < 1e-5);
    CHECK(report.bracket_minus_max < 1e-5);
    CHECK(report.bracket_pm_max < 1e-5);
    CHECK(report.canonical_residual < 1e-8);
    CHECK(report.product_max < 1e-10);
    CHECK(report.pass());
    CHECK(report.to_table().find("FAIL") == std::string::npos);
}

TEST_CASE("verify_scheme flags a perturbed scheme") {
    FactorizationScheme s = scarf_scheme(fig1_params);
    const auto g = s.g;
    const auto dg = s.dg;
    s.g = [g](Complex x) { return 1.01 * g(x); };
    s.dg = [dg](Complex x) { return 1.01 * dg(x); };

    std::vector<Complex> xs;
    for (int i = 0; i <= 20; ++i) {
        xs.push_back(Complex(-2.0 + 4.0 * double(i) / 20.0, 0.0));
    }
    const std::vector<Complex> energies = {{-3.0, 0.0}};
    const VerifyReport report = verify_scheme(s, fig1_params, xs, energies);
    CHECK(report.eq9_max > 1e-3);
    CHECK_FALSE(report.pass());
}
