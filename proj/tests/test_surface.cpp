#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "ssm/surface.hpp"
#include "oracles.hpp"

using namespace ssm;

namespace {
constexpr SurfaceType kTypes[] = {SurfaceType::TypeZ, SurfaceType::TypeY, SurfaceType::TypeX};
}

TEST_CASE("surface construction applies the domain margin") {
    const TranslationSurface S = make_surface(SurfaceType::TypeZ, make_linear(0.0, 1.0),
                                              make_linear(0.0, -1.0), {{0.0, 1.0}, {0.0, 2.0}});
    REQUIRE(S.domain().s1.lo == Catch::Approx(kDomainMargin));
    REQUIRE(S.domain().s1.hi == Catch::Approx(1.0 - kDomainMargin));
    REQUIRE(S.domain().s2.hi == Catch::Approx(2.0 - kDomainMargin));

    SECTION("degenerate rectangles are rejected") {
        REQUIRE_THROWS_AS(make_surface(SurfaceType::TypeZ, make_linear(0, 1), make_linear(0, 1),
                                       {{1.0, 1.0}, {0.0, 1.0}}),
                          BadParam);
        REQUIRE_THROWS_AS(make_surface(SurfaceType::TypeZ, make_linear(0, 1), make_linear(0, 1),
                                       {{0.0, 1e-10}, {0.0, 1.0}}),
                          BadParam);
    }

    SECTION("rectangle leaving a profile domain is rejected with a description") {
        // logcos with c2 = 0 lives on (-pi/4, pi/4)
        REQUIRE_THROWS_MATCHES(
            make_surface(SurfaceType::TypeZ, make_linear(0, 0), make_logcos(0.0, 0.0),
                         {{0.0, 1.0}, {0.0, 1.0}}),
            DomainError,
            Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("not inside")));
    }
}

TEST_CASE("inclusive grid coordinates hit closed-interval endpoints exactly") {
    // Regression: lo + width*i/(n-1) overshoots hi by one ulp for these
    // margin-inset bounds, pushing boundary samples outside the rectangle.
    const ClosedInterval iv{-1.5 + kDomainMargin, 1.5 - kDomainMargin};
    for (int n : {2, 5, 24, 101}) {
        REQUIRE(grid_coordinate(iv, 0, n) == iv.lo);
        REQUIRE(grid_coordinate(iv, n - 1, n) == iv.hi);
        for (int i = 1; i < n - 1; ++i) {
            const double s = grid_coordinate(iv, i, n);
            REQUIRE(iv.contains(s));
            REQUIRE(s > grid_coordinate(iv, i - 1, n));
        }
    }
}

TEST_CASE("surface jets satisfy the immersion invariants on random surfaces") {
    auto rng = oracles::make_rng(101u);
    for (const SurfaceType type : kTypes) {
        for (int trial = 0; trial < 20; ++trial) {
            const TranslationSurface S = oracles::random_surface(rng, type);
            for (int k = 0; k < 10; ++k) {
                const double s1 = oracles::random_inside(rng, S.domain().s1);
                const double s2 = oracles::random_inside(rng, S.domain().s2);
                const SurfaceJet J = surface_jet(S, s1, s2);

                INFO("type " << to_string(type) << " at (" << s1 << ", " << s2 << ")");
                REQUIRE(std::fabs(norm(J.xi) - 1.0) <= 1e-12);
                REQUIRE(std::fabs(dot(J.xi, J.sig1)) <= 1e-12);
                REQUIRE(std::fabs(dot(J.xi, J.sig2)) <= 1e-12);
                REQUIRE(J.detg > 0.0);
                REQUIRE(J.detg == Catch::Approx(J.W * J.W).epsilon(1e-12));
                REQUIRE(J.g11 == Catch::Approx(dot(J.sig1, J.sig1)).margin(1e-14));
                REQUIRE(J.g12 == Catch::Approx(dot(J.sig1, J.sig2)).margin(1e-14));
                REQUIRE(J.g22 == Catch::Approx(dot(J.sig2, J.sig2)).margin(1e-14));
                // mixed second partial of f(s1) + g(s2) vanishes identically
                REQUIRE(norm(J.sig12) == 0.0);
            }
        }
    }
}

TEST_CASE("the pinned unit normal matches its per-type formula") {
    auto rng = oracles::make_rng(202u);
    for (const SurfaceType type : kTypes) {
        const TranslationSurface S = oracles::random_surface(rng, type);
        for (int k = 0; k < 25; ++k) {
            const double s1 = oracles::random_inside(rng, S.domain().s1);
            const double s2 = oracles::random_inside(rng, S.domain().s2);
            const SurfaceJet J = surface_jet(S, s1, s2);
            const Vec3 expect = oracles::unit_normal(type, J.fj, J.gj);
            REQUIRE(norm(J.xi - expect) <= 1e-13);
            // and the position agrees with the per-type arrangement
            const Vec3 pos = oracles::position(type, s1, s2, J.fj, J.gj);
            REQUIRE(norm(J.pos - pos) <= 1e-13);
        }
    }
}

TEST_CASE("fd-backed jets agree with analytic jets") {
    auto rng = oracles::make_rng(303u);
    for (const SurfaceType type : kTypes) {
        const TranslationSurface S = oracles::random_surface(rng, type);
        for (int k = 0; k < 15; ++k) {
            const double s1 = oracles::random_inside(rng, S.domain().s1);
            const double s2 = oracles::random_inside(rng, S.domain().s2);
            const SurfaceJet A = surface_jet(S, s1, s2, JetBackend::Analytic);
            const SurfaceJet F = surface_jet(S, s1, s2, JetBackend::FiniteDifference);
            REQUIRE(norm(A.pos - F.pos) <= 1e-12);
            REQUIRE(norm(A.sig1 - F.sig1) <= 1e-6 * (1.0 + norm(A.sig1)));
            REQUIRE(norm(A.sig11 - F.sig11) <= 1e-4 * (1.0 + norm(A.sig11)));
            REQUIRE(std::fabs(dot(F.xi, F.sig1)) <= 1e-10);
            REQUIRE(std::fabs(dot(F.xi, F.sig2)) <= 1e-10);
        }
    }
}

TEST_CASE("translation property: cross-sections differ by an s1-independent vector") {
    auto rng = oracles::make_rng(404u);
    for (const SurfaceType type : kTypes) {
        const TranslationSurface S = oracles::random_surface(rng, type);
        for (int k = 0; k < 20; ++k) {
            const double a1 = oracles::random_inside(rng, S.domain().s1);
            const double b1 = oracles::random_inside(rng, S.domain().s1);
            const double s2 = oracles::random_inside(rng, S.domain().s2);
            const double t2 = oracles::random_inside(rng, S.domain().s2);
            const Vec3 da = surface_jet(S, a1, s2).pos - surface_jet(S, a1, t2).pos;
            const Vec3 db = surface_jet(S, b1, s2).pos - surface_jet(S, b1, t2).pos;
            REQUIRE(norm(da - db) <= 1e-12);
        }
    }
}

TEST_CASE("rigid offsets move positions but no derivative data") {
    auto rng = oracles::make_rng(505u);
    const TranslationSurface S = oracles::random_surface(rng, SurfaceType::TypeZ);
    const Vec3 off{3.0, -2.0, 7.0};
    const TranslationSurface T = S.with_offset(off);
    const double s1 = 0.3, s2 = -0.4;
    const SurfaceJet a = surface_jet(S, s1, s2);
    const SurfaceJet b = surface_jet(T, s1, s2);
    REQUIRE(norm((b.pos - a.pos) - off) <= 1e-15);
    REQUIRE(norm(b.xi - a.xi) == 0.0);
    REQUIRE(norm(b.sig1 - a.sig1) == 0.0);
    REQUIRE(norm(b.sig11 - a.sig11) == 0.0);
    REQUIRE(b.W == a.W);
}

TEST_CASE("out-of-rectangle queries are rejected") {
    auto rng = oracles::make_rng(606u);
    const TranslationSurface S = oracles::random_surface(rng, SurfaceType::TypeY);
    REQUIRE_THROWS_MATCHES(surface_jet(S, 2.0, 0.0), DomainError,
                           Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                               "outside the domain rectangle")));
    REQUIRE_THROWS_AS(surface_jet(S, 0.0, -2.0), DomainError);
}

TEST_CASE("normal derivatives match finite differences of the normal") {
    auto rng = oracles::make_rng(707u);
    for (const SurfaceType type : kTypes) {
        const TranslationSurface S = oracles::random_surface(rng, type);
        for (int k = 0; k < 10; ++k) {
            const double s1 = oracles::random_inside(rng, S.domain().s1);
            const double s2 = oracles::random_inside(rng, S.domain().s2);
            const SurfaceJet J = surface_jet(S, s1, s2);
            const NormalDerivatives nd = normal_derivatives(J);
            const double h = 1e-6;
            if (s1 - h <= S.domain().s1.lo || s1 + h >= S.domain().s1.hi) continue;
            if (s2 - h <= S.domain().s2.lo || s2 + h >= S.domain().s2.hi) continue;
            const Vec3 fd1 = (surface_jet(S, s1 + h, s2).xi - surface_jet(S, s1 - h, s2).xi) /
                             (2.0 * h);
            const Vec3 fd2 = (surface_jet(S, s1, s2 + h).xi - surface_jet(S, s1, s2 - h).xi) /
                             (2.0 * h);
            REQUIRE(norm(nd.d1 - fd1) <= 1e-5 * (1.0 + norm(fd1)));
            REQUIRE(norm(nd.d2 - fd2) <= 1e-5 * (1.0 + norm(fd2)));
        }
    }
}

TEST_CASE("meshing") {
    auto rng = oracles::make_rng(808u);
    const TranslationSurface S = oracles::random_surface(rng, SurfaceType::TypeZ);

    SECTION("vertex and triangle counts, index ranges, corner hits") {
        const int nu = 7, nv = 5;
        const Mesh m = make_mesh(S, nu, nv);
        REQUIRE(m.nu == nu);
        REQUIRE(m.nv == nv);
        REQUIRE(m.vertices.size() == static_cast<std::size_t>(nu * nv));
        REQUIRE(m.triangles.size() == static_cast<std::size_t>((nu - 1) * (nv - 1) * 2));
        for (const auto& tri : m.triangles) {
            std::set<int> distinct(tri.begin(), tri.end());
            REQUIRE(distinct.size() == 3);
            for (int idx : tri) {
                REQUIRE(idx >= 0);
                REQUIRE(idx < nu * nv);
            }
        }
        // first vertex sits at the domain corner exactly
        const SurfaceJet c = surface_jet(S, S.domain().s1.lo, S.domain().s2.lo);
        REQUIRE(norm(m.vertices.front().pos - c.pos) == 0.0);
        // every vertex carries the unit normal
        for (const auto& v : m.vertices)
            REQUIRE(std::fabs(norm(v.normal) - 1.0) <= 1e-12);
    }

    SECTION("sub-rectangle meshes and domain violations") {
        const Rect sub{{-0.5, 0.5}, {-0.25, 0.25}};
        const Mesh m = make_mesh(S, sub, 3, 3);
        REQUIRE(m.vertices.size() == 9);
        REQUIRE_THROWS_AS(make_mesh(S, Rect{{-5.0, 5.0}, {-0.25, 0.25}}, 3, 3), DomainError);
        REQUIRE_THROWS_AS(make_mesh(S, sub, 1, 3), BadParam);
    }

    SECTION("triangle orientation is consistent with the vertex normals") {
        const Mesh m = make_mesh(S, 9, 9);
        for (const auto& tri : m.triangles) {
            const Vec3 a = m.vertices[static_cast<std::size_t>(tri[0])].pos;
            const Vec3 b = m.vertices[static_cast<std::size_t>(tri[1])].pos;
            const Vec3 c = m.vertices[static_cast<std::size_t>(tri[2])].pos;
            const Vec3 n = cross(b - a, c - a);
            const Vec3 vn = m.vertices[static_cast<std::size_t>(tri[0])].normal;
            REQUIRE(dot(n, vn) > 0.0);
        }
    }
}
