#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "ssm/connections.hpp"
#include "ssm/errors.hpp"
#include "ssm/quadrature.hpp"
#include "ssm/surface.hpp"
#include "ssm/vec.hpp"

namespace ssm {

/// Certification setup for the weighted-minimality residual
///   2 H(connection) = alpha <xi, u> / <position, u>.
/// `u` is a fixed unit direction; everything is evaluated strictly inside the
/// open halfspace <position, u> > 0.
struct SingularConfig {
    ConnectionKind connection = ConnectionKind::SemiSymMetric;
    double alpha = 1.0;
    Vec3 u{1.0, 0.0, 0.0};
};

inline constexpr double kAlphaFloor = 1e-15;

namespace detail {

inline void validate_singular_config(const SingularConfig& cfg) {
    if (!(std::fabs(cfg.alpha) >= kAlphaFloor))
        throw BadParam("exponent alpha must be nonzero (|alpha| >= 1e-15)");
    if (std::fabs(norm(cfg.u) - 1.0) > 1e-12)
        throw BadParam("direction u must be a unit vector");
}

}  // namespace detail

/// Coordinate axis direction for CLI-facing configuration.
inline Vec3 axis_direction(char axis) {
    switch (axis) {
        case 'x': return {1.0, 0.0, 0.0};
        case 'y': return {0.0, 1.0, 0.0};
        case 'z': return {0.0, 0.0, 1.0};
        default: throw BadParam("axis must be one of x, y, z");
    }
}

/// One residual evaluation: lhs = 2H, rhs = alpha <xi,u>/height,
/// residual = lhs - rhs, height = <position, u> (> 0 by construction).
struct ResidualReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double height = 0.0;
};

/// Pointwise residual of the weighted-minimality equation on a surface.
/// The residual is reported as an absolute defect (the equation's two sides
/// are already scale-balanced); heights <= 0 are hard HalfspaceViolations.
inline ResidualReport surface_residual(const TranslationSurface& S, const SingularConfig& cfg,
                                       double s1, double s2,
                                       JetBackend backend = JetBackend::Analytic) {
    detail::validate_singular_config(cfg);
    const SurfaceJet J = surface_jet(S, s1, s2, backend);
    ResidualReport r;
    r.height = dot(J.pos, cfg.u);
    if (!(r.height > 0.0)) {
        std::ostringstream os;
        os << "surface point at parameters (" << s1 << ", " << s2 << ") has height "
           << r.height << " <= 0 in direction (" << cfg.u.x << ", " << cfg.u.y << ", "
           << cfg.u.z << ")";
        throw HalfspaceViolation(os.str());
    }
    const CurvatureReport c = mean_curvature(cfg.connection, J);
    r.lhs = 2.0 * c.H;
    r.rhs = cfg.alpha * dot(J.xi, cfg.u) / r.height;
    r.residual = r.lhs - r.rhs;
    return r;
}

// ---------------------------------------------------------------------------
// Plane-curve analogue
// ---------------------------------------------------------------------------

/// Jet of a regular plane curve at one parameter value.
struct CurveJet {
    Vec2 pos;
    Vec2 d1;
    Vec2 d2;
};

/// Curve jet of the graph s -> (s, f(s)).
inline CurveJet graph_curve_jet(const ProfileFn& f, double s) {
    const ScalarJet j = eval_jet(f, s, 2);
    return {{s, j.value}, {1.0, j.d1}, {0.0, j.d2}};
}

/// Residual of the weighted-curvature curve equation
///   kappa = alpha <n, u> / <gamma, u>
/// with the signed curvature and the left unit normal (tangent rotated +90
/// degrees); with that convention the pair (kappa, n) is exactly the
/// principal-curvature pair up to a joint sign, so the residual magnitude is
/// convention-independent, and straight segments are still well-defined.
inline ResidualReport curve_catenary_residual(const CurveJet& c, const Vec2& u, double alpha) {
    if (!(std::fabs(alpha) >= kAlphaFloor))
        throw BadParam("exponent alpha must be nonzero (|alpha| >= 1e-15)");
    if (std::fabs(norm(u) - 1.0) > 1e-12) throw BadParam("direction u must be a unit vector");
    const double speed = norm(c.d1);
    if (!(speed > 1e-14)) throw DegenerateCurve("curve jet has (near-)zero speed");
    ResidualReport r;
    r.height = dot(c.pos, u);
    if (!(r.height > 0.0)) {
        std::ostringstream os;
        os << "curve point (" << c.pos.x << ", " << c.pos.y << ") has height " << r.height
           << " <= 0";
        throw HalfspaceViolation(os.str());
    }
    const double kappa = cross2(c.d1, c.d2) / (speed * speed * speed);
    const Vec2 n{-c.d1.y / speed, c.d1.x / speed};
    r.lhs = kappa;
    r.rhs = alpha * dot(n, u) / r.height;
    r.residual = r.lhs - r.rhs;
    return r;
}

// ---------------------------------------------------------------------------
// Weighted area functional and its first variation
// ---------------------------------------------------------------------------

/// Weighted area E = integral of <position, u>^alpha dA over a parameter
/// rectangle, by tensor-product Gauss-Legendre of fixed order.
inline double potential_energy(const TranslationSurface& S, const Vec3& u, double alpha,
                               const Rect& region, int quad_order = 32) {
    if (std::fabs(norm(u) - 1.0) > 1e-12) throw BadParam("direction u must be a unit vector");
    if (!S.domain().contains(region.s1.lo, region.s2.lo) ||
        !S.domain().contains(region.s1.hi, region.s2.hi))
        throw DomainError("energy region leaves the surface's parameter rectangle");
    const QuadratureRule rule = gauss_legendre(quad_order);
    const double m1 = region.s1.mid(), h1 = 0.5 * region.s1.width();
    const double m2 = region.s2.mid(), h2 = 0.5 * region.s2.width();
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double a = m1 + h1 * rule.nodes[i];
            const double b = m2 + h2 * rule.nodes[j];
            const SurfaceJet J = surface_jet(S, a, b);
            const double height = dot(J.pos, u);
            if (!(height > 0.0)) {
                std::ostringstream os;
                os << "energy integrand at (" << a << ", " << b << ") has height " << height
                   << " <= 0";
                throw HalfspaceViolation(os.str());
            }
            acc += rule.weights[i] * rule.weights[j] * std::pow(height, alpha) * J.W;
        }
    }
    return acc * h1 * h2;
}

/// Smooth compactly supported bump b(s1, s2) on a parameter rectangle:
/// product of two exp(1 - 1/(1 - t^2)) profiles in the normalized
/// coordinates of the support; identically zero outside.
struct Bump {
    Rect support;
    double amplitude = 1.0;

    static double phi(double t) {
        if (!(std::fabs(t) < 1.0)) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - t * t));
    }
    static double dphi(double t) {
        if (!(std::fabs(t) < 1.0)) return 0.0;
        const double w = 1.0 - t * t;
        return phi(t) * (-2.0 * t / (w * w));
    }

    double t1(double s1) const { return (s1 - support.s1.mid()) / (0.5 * support.s1.width()); }
    double t2(double s2) const { return (s2 - support.s2.mid()) / (0.5 * support.s2.width()); }

    double value(double s1, double s2) const { return amplitude * phi(t1(s1)) * phi(t2(s2)); }
    double d_s1(double s1, double s2) const {
        return amplitude * dphi(t1(s1)) * phi(t2(s2)) / (0.5 * support.s1.width());
    }
    double d_s2(double s1, double s2) const {
        return amplitude * phi(t1(s1)) * dphi(t2(s2)) / (0.5 * support.s2.width());
    }
};

/// Symmetric-difference first variation of the weighted area under the
/// normal perturbation eps * b * xi, integrated over the bump's support.
/// Defined for the Levi-Civita connection only (the weighted-area functional
/// is a Riemannian object); other connections report UnsupportedConnection.
inline double first_variation(const TranslationSurface& S, const SingularConfig& cfg,
                              const Bump& bump, double eps = 1e-3, int quad_order = 32) {
    detail::validate_singular_config(cfg);
    if (cfg.connection != ConnectionKind::LeviCivita)
        throw UnsupportedConnection(
            "first variation of the weighted area is defined for the Levi-Civita connection");
    if (!(eps > 0.0)) throw BadParam("variation step eps must be positive");
    if (!S.domain().contains(bump.support.s1.lo, bump.support.s2.lo) ||
        !S.domain().contains(bump.support.s1.hi, bump.support.s2.hi))
        throw DomainError("bump support leaves the surface's parameter rectangle");

    const QuadratureRule rule = gauss_legendre(quad_order);
    const double m1 = bump.support.s1.mid(), h1 = 0.5 * bump.support.s1.width();
    const double m2 = bump.support.s2.mid(), h2 = 0.5 * bump.support.s2.width();
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double a = m1 + h1 * rule.nodes[i];
            const double b = m2 + h2 * rule.nodes[j];
            const SurfaceJet J = surface_jet(S, a, b);
            const NormalDerivatives dxi = normal_derivatives(J);
            const double bv = bump.value(a, b);
            const double b1 = bump.d_s1(a, b);
            const double b2 = bump.d_s2(a, b);
            // Perturbed integrand at +eps and -eps, same quadrature nodes so
            // the shared part cancels exactly in the difference.
            double f[2];
            for (int sgn = 0; sgn < 2; ++sgn) {
                const double e = (sgn == 0 ? eps : -eps);
                const Vec3 pos = J.pos + e * bv * J.xi;
                const Vec3 t1 = J.sig1 + e * (b1 * J.xi + bv * dxi.d1);
                const Vec3 t2 = J.sig2 + e * (b2 * J.xi + bv * dxi.d2);
                const double height = dot(pos, cfg.u);
                if (!(height > 0.0))
                    throw HalfspaceViolation(
                        "perturbed surface left the supporting halfspace; reduce eps");
                f[sgn] = std::pow(height, cfg.alpha) * norm(cross(t1, t2));
            }
            acc += rule.weights[i] * rule.weights[j] * (f[0] - f[1]);
        }
    }
    return acc * h1 * h2 / (2.0 * eps);
}

}  // namespace ssm
