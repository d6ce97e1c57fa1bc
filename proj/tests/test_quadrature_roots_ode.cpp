#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ssm/quadrature.hpp"
#include "ssm/roots.hpp"
#include "ssm/ode.hpp"

using namespace ssm;

TEST_CASE("Gauss-Legendre rules") {
    SECTION("nodes and weights have the defining structure") {
        for (int n : {2, 5, 16, 48}) {
            const QuadratureRule r = gauss_legendre(n);
            REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
            double wsum = 0.0;
            for (std::size_t i = 0; i < r.weights.size(); ++i) {
                wsum += r.weights[i];
                REQUIRE(r.weights[i] > 0.0);
                REQUIRE(std::fabs(r.nodes[i]) < 1.0);
            }
            REQUIRE(wsum == Catch::Approx(2.0).epsilon(1e-14));
            // symmetry of the rule about the origin
            REQUIRE(r.nodes.front() == Catch::Approx(-r.nodes.back()).margin(1e-15));
        }
    }

    SECTION("order-n rule integrates monomials up to degree 2n-1 exactly") {
        for (int n : {2, 3, 5}) {
            for (int p = 0; p <= 2 * n - 1; ++p) {
                const double got = integrate_gl([p](double x) { return std::pow(x, p); },
                                                0.0, 1.0, n);
                REQUIRE(got == Catch::Approx(1.0 / (p + 1)).epsilon(1e-13));
            }
        }
    }

    SECTION("smooth integrand on a shifted interval") {
        const double got = integrate_gl([](double x) { return std::sin(x); }, 0.5, 2.0, 24);
        REQUIRE(got == Catch::Approx(std::cos(0.5) - std::cos(2.0)).epsilon(1e-14));
    }
}

TEST_CASE("adaptive Gauss-Kronrod quadrature") {
    SECTION("oscillatory integrand") {
        const double got = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, 10.0);
        REQUIRE(got == Catch::Approx(1.0 - std::cos(10.0)).epsilon(1e-12));
    }

    SECTION("integrand with a sharp interior peak") {
        // integral of 1/(1e-4 + x^2) over [-1, 1] = 2 atan(100)/0.01
        const double got = integrate_adaptive(
            [](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-12);
        REQUIRE(got == Catch::Approx(2.0 * std::atan(100.0) / 0.01).epsilon(1e-10));
    }

    SECTION("degenerate interval integrates to zero") {
        REQUIRE(integrate_adaptive([](double x) { return x; }, 2.0, 2.0) == 0.0);
    }

    SECTION("inverse-square-root endpoint singularities") {
        const double lower = integrate_sqrt_singular_lower(
            [](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0);
        REQUIRE(lower == Catch::Approx(2.0).epsilon(1e-12));

        const double upper = integrate_sqrt_singular_upper(
            [](double t) { return 1.0 / std::sqrt(1.0 - t); }, 0.0, 1.0);
        REQUIRE(upper == Catch::Approx(2.0).epsilon(1e-12));

        // smooth factor times the singular kernel: integral of
        // cos(t)/sqrt(t) over [0, 1] via the tau^2 substitution
        const double mixed = integrate_sqrt_singular_lower(
            [](double t) { return std::cos(t) / std::sqrt(t); }, 0.0, 1.0);
        const double reference = integrate_adaptive(
            [](double tau) { return 2.0 * std::cos(tau * tau); }, 0.0, 1.0);
        REQUIRE(mixed == Catch::Approx(reference).epsilon(1e-12));
    }

    SECTION("bad bounds are rejected") {
        REQUIRE_THROWS_AS(
            integrate_sqrt_singular_lower([](double) { return 1.0; }, 1.0, 0.0), BadParam);
    }
}

TEST_CASE("Brent root finding") {
    SECTION("transcendental root to tight tolerance") {
        auto phi = [](double x) { return std::cos(x); };
        const double root = brent_root(phi, 1.0, 2.0, phi(1.0), phi(2.0));
        REQUIRE(root == Catch::Approx(std::acos(0.0)).margin(1e-13));
    }

    SECTION("endpoint roots are returned immediately") {
        auto phi = [](double x) { return x - 1.0; };
        REQUIRE(brent_root(phi, 1.0, 2.0, 0.0, 1.0) == 1.0);
        REQUIRE(brent_root(phi, 0.0, 1.0, -1.0, 0.0) == 1.0);
    }

    SECTION("same-sign bracket is rejected") {
        auto phi = [](double x) { return x * x + 1.0; };
        REQUIRE_THROWS_MATCHES(brent_root(phi, -1.0, 1.0, phi(-1.0), phi(1.0)), BadParam,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("does not change sign")));
    }

    SECTION("root of a steep function") {
        auto phi = [](double x) { return std::expm1(50.0 * (x - 0.123456789)); };
        const double root = brent_root(phi, 0.0, 1.0, phi(0.0), phi(1.0));
        REQUIRE(root == Catch::Approx(0.123456789).margin(1e-12));
    }
}

TEST_CASE("Dormand-Prince integration with dense output") {
    SECTION("exponential growth hits the known endpoint value") {
        auto rhs = [](double, const std::array<double, 1>& y) {
            return std::array<double, 1>{y[0]};
        };
        const DenseSolution<1> sol = integrate_dopri5<1>(rhs, 0.0, 2.0, {1.0});
        REQUIRE(sol.eval(2.0)[0] == Catch::Approx(std::exp(2.0)).epsilon(1e-9));
        REQUIRE(sol.x_begin() == 0.0);
        REQUIRE(sol.x_end() == 2.0);
        REQUIRE(sol.stats().steps_accepted > 0);

        // dense output matches the true solution between steps
        for (int i = 0; i <= 20; ++i) {
            const double x = 0.1 * i;
            REQUIRE(sol.eval(x)[0] == Catch::Approx(std::exp(x)).epsilon(1e-8));
            REQUIRE(sol.eval_derivative(x)[0] == Catch::Approx(std::exp(x)).epsilon(1e-6));
        }
    }

    SECTION("harmonic oscillator conserves energy at tight tolerance") {
        auto rhs = [](double, const std::array<double, 2>& y) {
            return std::array<double, 2>{y[1], -y[0]};
        };
        OdeConfig cfg;
        cfg.rtol = 1e-11;
        cfg.atol = 1e-13;
        const DenseSolution<2> sol = integrate_dopri5<2>(rhs, 0.0, 20.0, {1.0, 0.0}, cfg);
        for (int i = 0; i <= 40; ++i) {
            const double x = 0.5 * i;
            const auto y = sol.eval(x);
            const double energy = y[0] * y[0] + y[1] * y[1];
            REQUIRE(energy == Catch::Approx(1.0).epsilon(1e-8));
            REQUIRE(y[0] == Catch::Approx(std::cos(x)).margin(1e-8));
        }
    }

    SECTION("interpolant error shrinks when rtol tightens") {
        auto rhs = [](double x, const std::array<double, 1>&) {
            return std::array<double, 1>{std::cos(5.0 * x)};
        };
        auto worst = [&](double rtol) {
            OdeConfig cfg;
            cfg.rtol = rtol;
            cfg.atol = 1e-14;
            const DenseSolution<1> sol = integrate_dopri5<1>(rhs, 0.0, 3.0, {0.0}, cfg);
            double e = 0.0;
            for (int i = 0; i <= 300; ++i) {
                const double x = 0.01 * i;
                e = std::max(e, std::fabs(sol.eval(x)[0] - std::sin(5.0 * x) / 5.0));
            }
            return e;
        };
        const double coarse = worst(1e-6);
        const double fine = worst(1e-8);
        REQUIRE(fine < coarse);
        REQUIRE(fine <= coarse / 2.0);
    }

    SECTION("finite-time blow-up raises a step failure") {
        auto rhs = [](double, const std::array<double, 1>& y) {
            return std::array<double, 1>{y[0] * y[0]};
        };
        REQUIRE_THROWS_AS(integrate_dopri5<1>(rhs, 0.0, 2.0, {1.0}), StepFailure);
    }

    SECTION("parameter validation") {
        auto rhs = [](double, const std::array<double, 1>& y) {
            return std::array<double, 1>{y[0]};
        };
        REQUIRE_THROWS_AS(integrate_dopri5<1>(rhs, 1.0, 1.0, {1.0}), BadParam);
        REQUIRE_THROWS_AS(integrate_dopri5<1>(rhs, 2.0, 1.0, {1.0}), BadParam);
        OdeConfig cfg;
        cfg.rtol = 0.0;
        REQUIRE_THROWS_AS(integrate_dopri5<1>(rhs, 0.0, 1.0, {1.0}, cfg), BadParam);
    }

    SECTION("evaluation outside the integrated span is an error") {
        auto rhs = [](double, const std::array<double, 1>& y) {
            return std::array<double, 1>{y[0]};
        };
        const DenseSolution<1> sol = integrate_dopri5<1>(rhs, 0.0, 1.0, {1.0});
        REQUIRE_THROWS_AS(sol.eval(-0.5), DomainError);
        REQUIRE_THROWS_AS(sol.eval(1.5), DomainError);
    }
}
