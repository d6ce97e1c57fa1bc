#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "ssm/errors.hpp"
#include "ssm/surface.hpp"
#include "ssm/vec.hpp"

namespace ssm {

/// Ambient connections on R^3.  The two non-Riemannian ones are built from
/// the flat derivative and the fixed vertical direction e_z = (0,0,1):
///   metric semi-symmetric:      D^m_X Y = dY[X] + <Y,e_z> X - <X,Y> e_z
///   non-metric semi-symmetric:  D^n_X Y = dY[X] + <Y,e_z> X
/// Both have torsion <Y,e_z> X - <X,e_z> Y; the first preserves the metric,
/// the second does not.
enum class ConnectionKind { LeviCivita, SemiSymMetric, SemiSymNonMetric };

inline const char* to_string(ConnectionKind k) {
    switch (k) {
        case ConnectionKind::LeviCivita: return "levi";
        case ConnectionKind::SemiSymMetric: return "nabla";
        case ConnectionKind::SemiSymNonMetric: return "d";
    }
    return "?";
}

inline constexpr Vec3 kVertical{0.0, 0.0, 1.0};

// ---------------------------------------------------------------------------
// Surface pipeline: second covariant derivatives -> mean curvature
// ---------------------------------------------------------------------------

/// Second covariant derivatives of the immersion along the coordinate frame.
/// The (1,2) and (2,1) entries are kept separate: the added semi-symmetric
/// terms are not symmetric in their arguments.
struct CovariantSecond {
    Vec3 c11, c12, c21, c22;
};

inline CovariantSecond covariant_second(ConnectionKind kind, const SurfaceJet& J) {
    CovariantSecond out{J.sig11, J.sig12, J.sig12, J.sig22};
    if (kind == ConnectionKind::LeviCivita) return out;
    const double p1 = dot(J.sig1, kVertical);
    const double p2 = dot(J.sig2, kVertical);
    out.c11 += p1 * J.sig1;
    out.c12 += p2 * J.sig1;
    out.c21 += p1 * J.sig2;
    out.c22 += p2 * J.sig2;
    if (kind == ConnectionKind::SemiSymMetric) {
        out.c11 -= J.g11 * kVertical;
        out.c12 -= J.g12 * kVertical;
        out.c21 -= J.g12 * kVertical;
        out.c22 -= J.g22 * kVertical;
    }
    return out;
}

/// Normal components of the second covariant derivatives and the resulting
/// mean curvature; H_levi is always carried along as a cross-check.
struct CurvatureReport {
    double h11 = 0.0, h12 = 0.0, h21 = 0.0, h22 = 0.0;
    double H = 0.0;
    double H_levi = 0.0;
};

namespace detail {

inline double trace_h(const SurfaceJet& J, double h11, double h12, double h21, double h22) {
    return (J.g22 * h11 - J.g12 * (h12 + h21) + J.g11 * h22) / (2.0 * J.detg);
}

}  // namespace detail

/// Mean curvature of the immersion with respect to `kind` via the generic
/// pipeline: project the second covariant derivatives onto the pinned unit
/// normal and trace against the inverse metric.
inline CurvatureReport mean_curvature(ConnectionKind kind, const SurfaceJet& J) {
    const CovariantSecond cs = covariant_second(kind, J);
    CurvatureReport r;
    r.h11 = dot(cs.c11, J.xi);
    r.h12 = dot(cs.c12, J.xi);
    r.h21 = dot(cs.c21, J.xi);
    r.h22 = dot(cs.c22, J.xi);
    r.H = detail::trace_h(J, r.h11, r.h12, r.h21, r.h22);
    const double hl11 = dot(J.sig11, J.xi);
    const double hl12 = dot(J.sig12, J.xi);
    const double hl22 = dot(J.sig22, J.xi);
    r.H_levi = detail::trace_h(J, hl11, hl12, hl12, hl22);
    return r;
}

/// Closed-form mean curvature evaluated directly from the two profile jets —
/// an oracle independent of the covariant-derivative pipeline.  Signs follow
/// the pinned per-type normal orientation.  The (type-x, non-metric) pair has
/// no closed form and reports UnsupportedPair; use the pipeline for it.
inline double mean_curvature_closed_form(const TranslationSurface& S, ConnectionKind kind,
                                         double s1, double s2) {
    if (S.stype() == SurfaceType::TypeX && kind == ConnectionKind::SemiSymNonMetric)
        throw UnsupportedPair(
            "no closed-form mean curvature for the type-x/non-metric pair; use the pipeline");
    const ScalarJet fj = eval_jet(S.f(), s1, 2);
    const ScalarJet gj = eval_jet(S.g(), s2, 2);
    const double fp = fj.d1, fpp = fj.d2, gp = gj.d1, gpp = gj.d2;
    const double W2 = 1.0 + fp * fp + gp * gp;
    const double W3 = W2 * std::sqrt(W2);
    const double core = (1.0 + gp * gp) * fpp + (1.0 + fp * fp) * gpp;
    // Classical graph mean curvature, sign matching the pinned normal:
    // type-z and type-x normals make it +core, the type-y normal flips it.
    const double sgn = (S.stype() == SurfaceType::TypeY) ? -1.0 : 1.0;
    switch (kind) {
        case ConnectionKind::LeviCivita:
            return sgn * core / (2.0 * W3);
        case ConnectionKind::SemiSymNonMetric:
            // Equal to the Levi-Civita value: the added term is tangential.
            return sgn * core / (2.0 * W3);
        case ConnectionKind::SemiSymMetric:
            switch (S.stype()) {
                case SurfaceType::TypeZ:
                    return (core - 2.0 * W2) / (2.0 * W3);
                case SurfaceType::TypeY:
                    return -(core + 2.0 * W2 * gp) / (2.0 * W3);
                case SurfaceType::TypeX:
                    return (core + 2.0 * W2 * gp) / (2.0 * W3);
            }
    }
    throw BadParam("unknown connection kind");
}

// ---------------------------------------------------------------------------
// Ambient vector-field operators: torsion and metricity
// ---------------------------------------------------------------------------

/// Ambient vector field with smooth coefficient functions.  Directional
/// derivatives are taken by central differences of the coefficients, which is
/// exact for the constant and polynomial fields these operators are meant
/// for.
class VectorField {
  public:
    using Fn = std::function<Vec3(const Vec3&)>;

    static VectorField constant(const Vec3& v, std::string label = "constant") {
        return VectorField([v](const Vec3&) { return v; }, std::move(label));
    }

    static VectorField from_fn(Fn fn, std::string label = "field") {
        return VectorField(std::move(fn), std::move(label));
    }

    Vec3 operator()(const Vec3& p) const { return fn_(p); }
    const std::string& label() const { return label_; }

    /// Derivative of the coefficients along direction v (not normalized).
    Vec3 directional(const Vec3& p, const Vec3& v) const {
        const double nv = norm(v);
        if (nv == 0.0) return {};
        const double h = std::cbrt(std::numeric_limits<double>::epsilon()) *
                         (1.0 + norm(p)) / nv;
        const Vec3 fp = fn_(p + h * v);
        const Vec3 fm = fn_(p - h * v);
        return (fp - fm) / (2.0 * h);
    }

  private:
    VectorField(Fn fn, std::string label) : fn_(std::move(fn)), label_(std::move(label)) {}
    Fn fn_;
    std::string label_;
};

/// Ambient covariant derivative (nabla_X Y)(p) for the selected connection.
inline Vec3 ambient_covariant(ConnectionKind kind, const VectorField& X, const VectorField& Y,
                              const Vec3& p) {
    const Vec3 Xp = X(p);
    const Vec3 Yp = Y(p);
    Vec3 out = Y.directional(p, Xp);  // flat derivative dY[X]
    if (kind != ConnectionKind::LeviCivita) {
        out += dot(Yp, kVertical) * Xp;
        if (kind == ConnectionKind::SemiSymMetric) out -= dot(Xp, Yp) * kVertical;
    }
    return out;
}

/// Lie bracket [X, Y](p) = dY[X] - dX[Y] by central differences.
inline Vec3 lie_bracket(const VectorField& X, const VectorField& Y, const Vec3& p) {
    return Y.directional(p, X(p)) - X.directional(p, Y(p));
}

/// Torsion T(X, Y) = nabla_X Y - nabla_Y X - [X, Y] at p.
/// Vanishes for Levi-Civita; equals <Y,e_z> X - <X,e_z> Y for the two
/// semi-symmetric connections.
inline Vec3 torsion(ConnectionKind kind, const VectorField& X, const VectorField& Y,
                    const Vec3& p) {
    return ambient_covariant(kind, X, Y, p) - ambient_covariant(kind, Y, X, p) -
           lie_bracket(X, Y, p);
}

/// Metricity defect (nabla_X <Y,Z>-compatibility) at p:
///   X<Y,Z> - <nabla_X Y, Z> - <Y, nabla_X Z>.
/// Zero for Levi-Civita and the metric semi-symmetric connection; equals
/// -<Y,e_z><X,Z> - <Z,e_z><X,Y> for the non-metric one.
inline double metricity_defect(ConnectionKind kind, const VectorField& X, const VectorField& Y,
                               const VectorField& Z, const Vec3& p) {
    const Vec3 Xp = X(p);
    const double nv = norm(Xp);
    double lead = 0.0;
    if (nv > 0.0) {
        const double h = std::cbrt(std::numeric_limits<double>::epsilon()) *
                         (1.0 + norm(p)) / nv;
        const auto inner = [&](double t) {
            const Vec3 q = p + t * Xp;
            return dot(Y(q), Z(q));
        };
        lead = (inner(h) - inner(-h)) / (2.0 * h);
    }
    return lead - dot(ambient_covariant(kind, X, Y, p), Z(p)) -
           dot(Y(p), ambient_covariant(kind, X, Z, p));
}

}  // namespace ssm
