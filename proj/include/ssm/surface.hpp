#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ssm/errors.hpp"
#include "ssm/jets.hpp"
#include "ssm/vec.hpp"

namespace ssm {

/// Which ambient coordinate is the graph direction.  The two surface
/// parameters are always the remaining coordinates in ambient order:
///   TypeZ: (x, y, f(x)+g(y)),  parameters (s1, s2) = (x, y)
///   TypeY: (x, f(x)+g(z), z),  parameters (s1, s2) = (x, z)
///   TypeX: (f(y)+g(z), y, z),  parameters (s1, s2) = (y, z)
enum class SurfaceType { TypeZ, TypeY, TypeX };

inline const char* to_string(SurfaceType t) {
    switch (t) {
        case SurfaceType::TypeZ: return "type-z";
        case SurfaceType::TypeY: return "type-y";
        case SurfaceType::TypeX: return "type-x";
    }
    return "?";
}

/// Closed parameter rectangle [s1.lo, s1.hi] x [s2.lo, s2.hi].  Constructors
/// shrink user-supplied rectangles by a margin so the closed rectangle sits
/// strictly inside the open profile domains.
struct ClosedInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double s) const { return lo <= s && s <= hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

struct Rect {
    ClosedInterval s1;
    ClosedInterval s2;
    bool contains(double a, double b) const { return s1.contains(a) && s2.contains(b); }
};

/// i-th of n inclusive grid coordinates over `iv`.  Endpoints are returned
/// exactly; the naive lo + width*i/(n-1) form can overshoot hi by an ulp and
/// fall outside a closed interval whose bounds are not round numbers.
inline double grid_coordinate(const ClosedInterval& iv, int i, int n) {
    if (i <= 0) return iv.lo;
    if (i >= n - 1) return iv.hi;
    return iv.lo + iv.width() * i / (n - 1.0);
}

/// Default margin by which requested parameter rectangles are pulled into the
/// interior of the open profile domains.
inline constexpr double kDomainMargin = 1e-9;

/// Translation surface built from two scalar profiles; immutable value type.
/// `offset` rigidly translates the image in ambient space (it changes
/// positions and halfspace heights but no derivative or curvature data).
class TranslationSurface {
  public:
    TranslationSurface(SurfaceType stype, ProfileFn f, ProfileFn g, Rect domain,
                       Vec3 offset = {}, std::string id = "surface")
        : stype_(stype), f_(std::move(f)), g_(std::move(g)), dom_(domain), offset_(offset),
          id_(std::move(id)) {}

    SurfaceType stype() const { return stype_; }
    const ProfileFn& f() const { return f_; }
    const ProfileFn& g() const { return g_; }
    const Rect& domain() const { return dom_; }
    const Vec3& offset() const { return offset_; }
    const std::string& id() const { return id_; }

    TranslationSurface with_offset(const Vec3& off) const {
        TranslationSurface s = *this;
        s.offset_ = off;
        return s;
    }

    TranslationSurface with_id(std::string id) const {
        TranslationSurface s = *this;
        s.id_ = std::move(id);
        return s;
    }

  private:
    SurfaceType stype_;
    ProfileFn f_, g_;
    Rect dom_;
    Vec3 offset_;
    std::string id_;
};

/// Build a surface whose parameter rectangle is `requested` shrunk by
/// `margin` on every side; the shrunk closed rectangle must sit strictly
/// inside the open domains of both profiles.
inline TranslationSurface make_surface(SurfaceType stype, ProfileFn f, ProfileFn g,
                                       Rect requested, Vec3 offset = {},
                                       std::string id = "surface",
                                       double margin = kDomainMargin) {
    if (!(margin >= 0.0)) throw BadParam("domain margin must be non-negative");
    if (!(requested.s1.lo < requested.s1.hi) || !(requested.s2.lo < requested.s2.hi))
        throw BadParam("parameter rectangle must have positive extent");
    if (f.max_order() < 2 || g.max_order() < 2)
        throw BadParam("surface profiles must supply at least second derivatives");
    Rect dom{{requested.s1.lo + margin, requested.s1.hi - margin},
             {requested.s2.lo + margin, requested.s2.hi - margin}};
    if (!(dom.s1.lo < dom.s1.hi) || !(dom.s2.lo < dom.s2.hi))
        throw BadParam("parameter rectangle collapsed after applying the domain margin");
    const Interval fd = f.domain(), gd = g.domain();
    if (!fd.contains(dom.s1.lo) || !fd.contains(dom.s1.hi)) {
        std::ostringstream os;
        os << "s1 range [" << dom.s1.lo << ", " << dom.s1.hi << "] not inside domain "
           << format_interval(fd) << " of " << f.describe();
        throw DomainError(os.str());
    }
    if (!gd.contains(dom.s2.lo) || !gd.contains(dom.s2.hi)) {
        std::ostringstream os;
        os << "s2 range [" << dom.s2.lo << ", " << dom.s2.hi << "] not inside domain "
           << format_interval(gd) << " of " << g.describe();
        throw DomainError(os.str());
    }
    return TranslationSurface(stype, std::move(f), std::move(g), dom, offset, std::move(id));
}

/// Position, partial derivatives, first fundamental form and pinned unit
/// normal of the immersion at one parameter point.
struct SurfaceJet {
    SurfaceType stype = SurfaceType::TypeZ;
    double s1 = 0.0, s2 = 0.0;
    ScalarJet fj, gj;          // profile jets driving the surface
    Vec3 pos;                  // immersion value (offset included)
    Vec3 sig1, sig2;           // first partials
    Vec3 sig11, sig12, sig22;  // second partials
    Vec3 xi;                   // unit normal, orientation pinned per type
    double g11 = 0.0, g12 = 0.0, g22 = 0.0;  // metric coefficients
    double detg = 0.0;                       // g11*g22 - g12^2
    double W = 0.0;                          // sqrt(detg) = |sig1 x sig2|
};

/// Source of the profile derivatives that feed a surface jet.
enum class JetBackend { Analytic, FiniteDifference };

namespace detail {

inline void assemble_surface_jet(SurfaceJet& J) {
    switch (J.stype) {
        case SurfaceType::TypeZ:
            J.pos = {J.s1, J.s2, J.fj.value + J.gj.value};
            J.sig1 = {1.0, 0.0, J.fj.d1};
            J.sig2 = {0.0, 1.0, J.gj.d1};
            J.sig11 = {0.0, 0.0, J.fj.d2};
            J.sig22 = {0.0, 0.0, J.gj.d2};
            break;
        case SurfaceType::TypeY:
            J.pos = {J.s1, J.fj.value + J.gj.value, J.s2};
            J.sig1 = {1.0, J.fj.d1, 0.0};
            J.sig2 = {0.0, J.gj.d1, 1.0};
            J.sig11 = {0.0, J.fj.d2, 0.0};
            J.sig22 = {0.0, J.gj.d2, 0.0};
            break;
        case SurfaceType::TypeX:
            J.pos = {J.fj.value + J.gj.value, J.s1, J.s2};
            J.sig1 = {J.fj.d1, 1.0, 0.0};
            J.sig2 = {J.gj.d1, 0.0, 1.0};
            J.sig11 = {J.fj.d2, 0.0, 0.0};
            J.sig22 = {J.gj.d2, 0.0, 0.0};
            break;
    }
    J.sig12 = {0.0, 0.0, 0.0};  // the defining property of a translation surface
    J.g11 = dot(J.sig1, J.sig1);
    J.g12 = dot(J.sig1, J.sig2);
    J.g22 = dot(J.sig2, J.sig2);
    J.detg = J.g11 * J.g22 - J.g12 * J.g12;
    const Vec3 n = cross(J.sig1, J.sig2);
    J.W = norm(n);
    if (!(J.detg > 1e-300) || !(J.W > 1e-300))
        throw DegenerateMetric("first fundamental form degenerated");
    // For all three graph types cross(sig1, sig2) equals the pinned normal
    // direction: (-f', -g', 1), (f', -1, g'), (1, -f', -g') respectively.
    J.xi = n / J.W;
}

}  // namespace detail

/// Jet of the immersion at (s1, s2); profile derivatives are taken either
/// from the profiles' own jets or re-derived by central finite differences
/// of profile values (for cross-checks).
inline SurfaceJet surface_jet(const TranslationSurface& S, double s1, double s2,
                              JetBackend backend = JetBackend::Analytic) {
    if (!S.domain().contains(s1, s2)) {
        std::ostringstream os;
        os << "parameter point (" << s1 << ", " << s2 << ") outside the domain rectangle of "
           << S.id();
        throw DomainError(os.str());
    }
    SurfaceJet J;
    J.stype = S.stype();
    J.s1 = s1;
    J.s2 = s2;
    if (backend == JetBackend::Analytic) {
        J.fj = eval_jet(S.f(), s1, 2);
        J.gj = eval_jet(S.g(), s2, 2);
    } else {
        J.fj = fd_jet(S.f(), s1);
        J.gj = fd_jet(S.g(), s2);
    }
    detail::assemble_surface_jet(J);
    J.pos += S.offset();
    return J;
}

/// First partials of the unit normal field; only profile derivatives through
/// second order are needed, so this works for quadrature-defined profiles.
struct NormalDerivatives {
    Vec3 d1;  // d(xi)/d(s1)
    Vec3 d2;  // d(xi)/d(s2)
};

inline NormalDerivatives normal_derivatives(const SurfaceJet& J) {
    // xi = n/|n| with n = cross(sig1, sig2); dn restricted to translation
    // surfaces: d1 n = cross(sig11, sig2), d2 n = cross(sig1, sig22).
    const Vec3 n = cross(J.sig1, J.sig2);
    const double nn = norm(n);
    const Vec3 dn1 = cross(J.sig11, J.sig2);
    const Vec3 dn2 = cross(J.sig1, J.sig22);
    NormalDerivatives out;
    out.d1 = dn1 / nn - n * (dot(n, dn1) / (nn * nn * nn));
    out.d2 = dn2 / nn - n * (dot(n, dn2) / (nn * nn * nn));
    return out;
}

// ---------------------------------------------------------------------------
// Meshing
// ---------------------------------------------------------------------------

struct MeshVertex {
    Vec3 pos;
    Vec3 normal;
};

/// Structured triangle mesh over a parameter rectangle: nu x nv vertices in
/// row-major order (s1 index major), (nu-1)*(nv-1)*2 triangles with
/// consistent orientation.
struct Mesh {
    int nu = 0;
    int nv = 0;
    std::vector<MeshVertex> vertices;
    std::vector<std::array<int, 3>> triangles;  // 0-based vertex indices
};

/// Sample the surface over `region` (which must sit inside the surface's
/// parameter rectangle) on a regular nu x nv grid.
inline Mesh make_mesh(const TranslationSurface& S, const Rect& region, int nu, int nv) {
    if (nu < 2 || nv < 2) throw BadParam("mesh grids need at least 2 samples per axis");
    if (!S.domain().contains(region.s1.lo, region.s2.lo) ||
        !S.domain().contains(region.s1.hi, region.s2.hi)) {
        std::ostringstream os;
        os << "mesh region [" << region.s1.lo << ", " << region.s1.hi << "] x [" << region.s2.lo
           << ", " << region.s2.hi << "] leaves the domain rectangle of " << S.id();
        throw DomainError(os.str());
    }
    if (!(region.s1.lo < region.s1.hi) || !(region.s2.lo < region.s2.hi))
        throw BadParam("mesh region must have positive extent");
    Mesh mesh;
    mesh.nu = nu;
    mesh.nv = nv;
    mesh.vertices.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
    for (int i = 0; i < nu; ++i) {
        const double a = grid_coordinate(region.s1, i, nu);
        for (int j = 0; j < nv; ++j) {
            const double b = grid_coordinate(region.s2, j, nv);
            const SurfaceJet J = surface_jet(S, a, b);
            mesh.vertices.push_back({J.pos, J.xi});
        }
    }
    mesh.triangles.reserve(static_cast<std::size_t>(nu - 1) * static_cast<std::size_t>(nv - 1) * 2);
    for (int i = 0; i + 1 < nu; ++i) {
        for (int j = 0; j + 1 < nv; ++j) {
            const int a = i * nv + j;
            const int b = (i + 1) * nv + j;
            const int c = (i + 1) * nv + j + 1;
            const int d = i * nv + j + 1;
            mesh.triangles.push_back({a, b, c});
            mesh.triangles.push_back({a, c, d});
        }
    }
    return mesh;
}

/// Mesh over the surface's whole parameter rectangle.
inline Mesh make_mesh(const TranslationSurface& S, int nu, int nv) {
    return make_mesh(S, S.domain(), nu, nv);
}

}  // namespace ssm
