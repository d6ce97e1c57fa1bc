#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "ssm/jets.hpp"
#include "oracles.hpp"

using namespace ssm;

namespace {

// Closed-form profiles exercised by the generic jet properties, each with a
// point budget well inside its domain.
struct ProfileCase {
    ProfileFn fn;
    Interval sample;  // where to draw test points (inside fn.domain())
};

std::vector<ProfileCase> analytic_profiles() {
    std::vector<ProfileCase> out;
    out.push_back({make_constant(1.25), {-3.0, 3.0}});
    out.push_back({make_linear(0.5, -2.0), {-3.0, 3.0}});
    out.push_back({make_catenary(1.0, 0.0), {-2.0, 2.0}});
    out.push_back({make_catenary(0.7, 0.4), {-2.0, 2.0}});
    out.push_back({make_logcos(0.0, 0.0), {-0.7, 0.7}});
    out.push_back({make_logcos(0.3, -1.0), {-0.8, 0.5}});
    out.push_back({make_arctan_exp(1.0, 0.0, +1), {0.1, 2.0}});
    out.push_back({make_arctan_exp(0.5, 1.0, -1), {-0.2, 2.0}});
    out.push_back({make_log_cos_scaled(-1.0), {-1.4, 1.4}});
    out.push_back({make_log_cos_scaled(1.0), {-1.4, 1.4}});
    out.push_back({make_poly_sin(0.1, -0.2, 0.05, 0.3, 0.2, 1.7, 0.3), {-2.0, 2.0}});
    return out;
}

}  // namespace

TEST_CASE("scalar jets of the closed-form profiles match worked values") {
    SECTION("catenary (1/lambda) cosh(lambda s + mu)") {
        const ProfileFn f = make_catenary(2.0, 0.5);
        const double s = 0.3;
        const double t = 2.0 * s + 0.5;
        const ScalarJet j = eval_jet(f, s, 3);
        REQUIRE(j.value == Catch::Approx(std::cosh(t) / 2.0).epsilon(1e-15));
        REQUIRE(j.d1 == Catch::Approx(std::sinh(t)).epsilon(1e-15));
        REQUIRE(j.d2 == Catch::Approx(2.0 * std::cosh(t)).epsilon(1e-15));
        REQUIRE(j.d3 == Catch::Approx(4.0 * std::sinh(t)).epsilon(1e-15));
    }

    SECTION("log-cosine profile jet at the origin") {
        const ProfileFn g = make_logcos(0.0, 0.0);
        const ScalarJet j = eval_jet(g, 0.0, 3);
        REQUIRE(j.value == 0.0);
        REQUIRE(j.d1 == 0.0);
        REQUIRE(j.d2 == Catch::Approx(2.0).margin(1e-15));
        REQUIRE(j.d3 == Catch::Approx(0.0).margin(1e-15));
    }

    SECTION("log-cosine satisfies g'' = 2 g'^2 + 2 across its domain") {
        const ProfileFn g = make_logcos(0.4, 2.0);
        const Interval dom = g.domain();
        for (int i = 1; i < 40; ++i) {
            const double s = dom.lo + dom.width() * i / 40.0;
            const ScalarJet j = eval_jet(g, s, 2);
            REQUIRE(j.d2 == Catch::Approx(2.0 * j.d1 * j.d1 + 2.0).epsilon(1e-12));
        }
    }

    SECTION("arctan-exponential profile against direct formulas") {
        const double c2 = 1.3, c3 = -0.2;
        const ProfileFn g = make_arctan_exp(c2, c3, +1);
        const double z = 0.8;
        const double e4 = std::exp(4.0 * z);
        const double v = std::sqrt(e4 - c2 * c2);
        const ScalarJet j = eval_jet(g, z, 3);
        REQUIRE(j.value == Catch::Approx(0.5 * std::atan(v / c2) + c3).epsilon(1e-14));
        REQUIRE(j.d1 == Catch::Approx(c2 / v).epsilon(1e-14));
        REQUIRE(j.d2 == Catch::Approx(-2.0 * c2 * e4 / (v * v * v)).epsilon(1e-13));
    }

    SECTION("arctan-exponential satisfies g'' = -2 (1 + g'^2) g'") {
        for (const int sign : {+1, -1}) {
            const ProfileFn g = make_arctan_exp(0.8, 0.0, sign);
            const double zlo = g.domain().lo;
            for (int i = 1; i <= 30; ++i) {
                const double z = zlo + 0.08 * i;
                const ScalarJet j = eval_jet(g, z, 2);
                REQUIRE(j.d2 ==
                        Catch::Approx(-2.0 * (1.0 + j.d1 * j.d1) * j.d1).epsilon(1e-11));
            }
        }
    }

    SECTION("scaled log-cosine halves assemble the classical minimal graph") {
        const ProfileFn f = make_log_cos_scaled(-1.0);
        const ProfileFn g = make_log_cos_scaled(1.0);
        const double s = 0.4;
        REQUIRE(eval_value(f, s) == Catch::Approx(-std::log(std::cos(s))).epsilon(1e-14));
        REQUIRE(eval_value(g, s) == Catch::Approx(std::log(std::cos(s))).epsilon(1e-14));
        REQUIRE(eval_jet(f, s, 2).d2 == Catch::Approx(1.0 / std::pow(std::cos(s), 2)).epsilon(1e-13));
    }
}

TEST_CASE("finite-difference jets agree with analytic jets on random points") {
    auto rng = oracles::make_rng(20260817u);
    for (const auto& pc : analytic_profiles()) {
        for (int k = 0; k < 100; ++k) {
            const double s = oracles::random_inside(rng, {pc.sample.lo, pc.sample.hi});
            const ScalarJet a = eval_jet(pc.fn, s, 2);
            const ScalarJet fd = fd_jet(pc.fn, s);
            INFO(pc.fn.describe() << " at s = " << s);
            REQUIRE(std::fabs(fd.d1 - a.d1) <= 1e-6 * (1.0 + std::fabs(a.d1)));
            REQUIRE(std::fabs(fd.d2 - a.d2) <= 1e-4 * (1.0 + std::fabs(a.d2)));
        }
    }
}

TEST_CASE("jets are finite and deterministic inside the declared domain") {
    auto rng = oracles::make_rng(77u);
    for (const auto& pc : analytic_profiles()) {
        for (int k = 0; k < 25; ++k) {
            const double s = oracles::random_inside(rng, {pc.sample.lo, pc.sample.hi});
            const ScalarJet a = eval_jet(pc.fn, s);
            REQUIRE(std::isfinite(a.value));
            REQUIRE(std::isfinite(a.d1));
            REQUIRE(std::isfinite(a.d2));
            REQUIRE(std::isfinite(a.d3));
            const ScalarJet b = eval_jet(pc.fn, s);
            // bit-identical repeats, not merely approximately equal
            REQUIRE(std::memcmp(&a, &b, sizeof a) == 0);
        }
    }
}

TEST_CASE("evaluation outside the open domain is an error") {
    const ProfileFn g = make_logcos(0.0, 0.0);  // domain (-pi/4, pi/4)
    const double edge = g.domain().hi;
    REQUIRE_THROWS_AS(eval_jet(g, edge, 2), DomainError);
    REQUIRE_THROWS_AS(eval_jet(g, edge + 1.0, 2), DomainError);
    REQUIRE_THROWS_AS(eval_jet(g, g.domain().lo, 2), DomainError);
    REQUIRE_NOTHROW(eval_jet(g, edge - 1e-9, 2));

    const ProfileFn h = make_arctan_exp(2.0, 0.0, +1);
    REQUIRE(h.domain().lo == Catch::Approx(0.5 * std::log(2.0)));
    REQUIRE_THROWS_MATCHES(eval_jet(h, 0.0, 1), DomainError,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("outside domain")));
}

TEST_CASE("jet order handling") {
    const ProfileFn f = make_catenary(1.0, 0.0);
    REQUIRE_THROWS_AS(eval_jet(f, 0.0, -1), BadParam);
    REQUIRE_THROWS_AS(eval_jet(f, 0.0, 4), BadParam);
    REQUIRE(f.max_order() == 3);
    // order-0 jets carry the value only
    REQUIRE(eval_jet(f, 0.3, 0).value == Catch::Approx(std::cosh(0.3)));
}

TEST_CASE("interval formatting and containment") {
    const Interval iv{-1.0, 2.0};
    REQUIRE(iv.contains(0.0));
    REQUIRE_FALSE(iv.contains(-1.0));  // open at both ends
    REQUIRE_FALSE(iv.contains(2.0));
    REQUIRE(iv.width() == Catch::Approx(3.0));
    REQUIRE(iv.mid() == Catch::Approx(0.5));
    const Interval shrunk = iv.shrunk(0.25);
    REQUIRE(shrunk.lo == Catch::Approx(-0.75));
    REQUIRE(shrunk.hi == Catch::Approx(1.75));
    REQUIRE_THAT(format_interval(iv), Catch::Matchers::ContainsSubstring("-1"));
}
