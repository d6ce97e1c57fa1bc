#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>

#include "ssm/errors.hpp"

namespace ssm {

/// Value and first three derivatives of a scalar profile at one point.
/// Fields beyond the supplying profile's maximum order are zero.
struct ScalarJet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

/// Open real interval (lo, hi).  Every profile is defined on one of these;
/// evaluation on the boundary is a DomainError, never an extrapolation.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double s) const { return lo < s && s < hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }

    /// The interval shrunk by `margin` on each (finite) side.
    Interval shrunk(double margin) const {
        Interval r = *this;
        if (std::isfinite(r.lo)) r.lo += margin;
        if (std::isfinite(r.hi)) r.hi -= margin;
        return r;
    }
};

inline std::string format_interval(const Interval& iv) {
    std::ostringstream os;
    os << "(" << iv.lo << ", " << iv.hi << ")";
    return os.str();
}

namespace detail {

/// Immutable implementation behind ProfileFn.  Implementations assume the
/// abscissa was already domain-checked and report derivatives through
/// `max_order()`; they never allocate or mutate after construction, so a
/// ProfileFn can be shared freely across threads.
class ProfileImpl {
  public:
    virtual ~ProfileImpl() = default;

    /// Jet at `s` filled through min(order, max_order()); `s` is guaranteed
    /// to lie inside `domain()`.
    virtual ScalarJet jet(double s, int order) const = 0;

    virtual Interval domain() const = 0;

    /// Highest derivative order this profile can supply (2 or 3).
    virtual int max_order() const = 0;

    /// Short human-readable description for reports and error messages.
    virtual std::string describe() const = 0;
};

}  // namespace detail

/// A scalar profile function f(s): an immutable value type wrapping one of
/// the closed-form catalog entries, a tabulated ODE solution, or a
/// quadrature-defined profile.  Copies share the underlying implementation.
class ProfileFn {
  public:
    explicit ProfileFn(std::shared_ptr<const detail::ProfileImpl> impl) : impl_(std::move(impl)) {}

    Interval domain() const { return impl_->domain(); }
    int max_order() const { return impl_->max_order(); }
    std::string describe() const { return impl_->describe(); }

    const detail::ProfileImpl& impl() const { return *impl_; }

  private:
    std::shared_ptr<const detail::ProfileImpl> impl_;
};

namespace detail {

[[noreturn]] inline void throw_domain(const ProfileFn& fn, double s) {
    std::ostringstream os;
    os << "abscissa " << s << " outside domain " << format_interval(fn.domain()) << " of "
       << fn.describe();
    throw DomainError(os.str());
}

}  // namespace detail

/// Evaluate the jet of `fn` at `s` through `order` derivatives.
/// Throws DomainError outside the open domain and UnsupportedOrder when the
/// profile cannot supply the requested order (quadrature-defined and
/// tabulated profiles stop at order 2).
inline ScalarJet eval_jet(const ProfileFn& fn, double s, int order) {
    if (order < 0 || order > 3) throw BadParam("jet order must be in [0, 3]");
    if (order > fn.max_order()) {
        std::ostringstream os;
        os << fn.describe() << " supplies derivatives through order " << fn.max_order()
           << "; order " << order << " was requested";
        throw UnsupportedOrder(os.str());
    }
    if (!fn.domain().contains(s)) detail::throw_domain(fn, s);
    return fn.impl().jet(s, order);
}

/// Evaluate the full jet `fn` supports (order 3 for closed-form profiles,
/// order 2 for tabulated/quadrature-defined ones; missing slots stay zero).
inline ScalarJet eval_jet(const ProfileFn& fn, double s) {
    return eval_jet(fn, s, fn.max_order() < 3 ? fn.max_order() : 3);
}

/// Profile value only (order-0 jet).
inline double eval_value(const ProfileFn& fn, double s) { return eval_jet(fn, s, 0).value; }

namespace detail {

inline double fd_value(const ProfileFn& fn, double s) {
    if (!fn.domain().contains(s)) throw_domain(fn, s);
    return fn.impl().jet(s, 0).value;
}

}  // namespace detail

/// Finite-difference jet built from value samples only, with one caller-chosen
/// step used for every order.  Central stencils: 2-point for d1, 3-point for
/// d2, 5-point for d3.  The stencil s±2h must stay inside the domain.
inline ScalarJet fd_jet(const ProfileFn& fn, double s, double h) {
    if (!(h > 0.0)) throw BadParam("finite-difference step must be positive");
    const Interval dom = fn.domain();
    if (!dom.contains(s - 2 * h) || !dom.contains(s + 2 * h)) {
        std::ostringstream os;
        os << "finite-difference stencil " << s << " +/- " << 2 * h << " leaves domain "
           << format_interval(dom) << " of " << fn.describe();
        throw DomainError(os.str());
    }
    const double f0 = detail::fd_value(fn, s);
    const double fp1 = detail::fd_value(fn, s + h);
    const double fm1 = detail::fd_value(fn, s - h);
    const double fp2 = detail::fd_value(fn, s + 2 * h);
    const double fm2 = detail::fd_value(fn, s - 2 * h);
    ScalarJet j;
    j.value = f0;
    j.d1 = (fp1 - fm1) / (2 * h);
    j.d2 = (fp1 - 2 * f0 + fm1) / (h * h);
    j.d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h * h * h);
    return j;
}

/// Finite-difference jet with per-order steps balancing truncation against
/// roundoff: h1 = eps^(1/3)(1+|s|) for d1, h2 = eps^(1/4)(1+|s|) for d2,
/// h3 = eps^(1/5)(1+|s|) for d3.
inline ScalarJet fd_jet(const ProfileFn& fn, double s) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double scale = 1.0 + std::fabs(s);
    const double h1 = std::cbrt(eps) * scale;
    const double h2 = std::pow(eps, 0.25) * scale;
    const double h3 = std::pow(eps, 0.2) * scale;
    const Interval dom = fn.domain();
    const double reach = 2 * h3 > h2 ? 2 * h3 : h2;
    if (!dom.contains(s - reach) || !dom.contains(s + reach)) {
        std::ostringstream os;
        os << "finite-difference stencil " << s << " +/- " << reach << " leaves domain "
           << format_interval(dom) << " of " << fn.describe();
        throw DomainError(os.str());
    }
    ScalarJet j;
    j.value = detail::fd_value(fn, s);
    j.d1 = (detail::fd_value(fn, s + h1) - detail::fd_value(fn, s - h1)) / (2 * h1);
    j.d2 = (detail::fd_value(fn, s + h2) - 2 * j.value + detail::fd_value(fn, s - h2)) / (h2 * h2);
    j.d3 = (detail::fd_value(fn, s + 2 * h3) - 2 * detail::fd_value(fn, s + h3) +
            2 * detail::fd_value(fn, s - h3) - detail::fd_value(fn, s - 2 * h3)) /
           (2 * h3 * h3 * h3);
    return j;
}

// ---------------------------------------------------------------------------
// Closed-form profile catalog
// ---------------------------------------------------------------------------

namespace detail {

class ConstantProfile final : public ProfileImpl {
  public:
    explicit ConstantProfile(double c) : c_(c) {}
    ScalarJet jet(double, int) const override { return {c_, 0.0, 0.0, 0.0}; }
    Interval domain() const override { return {}; }
    int max_order() const override { return 3; }
    std::string describe() const override {
        std::ostringstream os;
        os << "constant profile " << c_;
        return os.str();
    }

  private:
    double c_;
};

class LinearProfile final : public ProfileImpl {
  public:
    LinearProfile(double c0, double c1) : c0_(c0), c1_(c1) {}
    ScalarJet jet(double s, int) const override { return {c0_ + c1_ * s, c1_, 0.0, 0.0}; }
    Interval domain() const override { return {}; }
    int max_order() const override { return 3; }
    std::string describe() const override {
        std::ostringstream os;
        os << "linear profile " << c0_ << " + " << c1_ << "*s";
        return os.str();
    }

  private:
    double c0_, c1_;
};

/// Catenary profile (1/lambda)cosh(lambda s + mu): curvature of its plane
/// graph balances the vertical weighting with exponent 1.
class CatenaryProfile final : public ProfileImpl {
  public:
    CatenaryProfile(double lambda, double mu) : lambda_(lambda), mu_(mu) {}
    ScalarJet jet(double s, int) const override {
        const double t = lambda_ * s + mu_;
        const double ch = std::cosh(t), sh = std::sinh(t);
        return {ch / lambda_, sh, lambda_ * ch, lambda_ * lambda_ * sh};
    }
    Interval domain() const override { return {}; }
    int max_order() const override { return 3; }
    std::string describe() const override {
        std::ostringstream os;
        os << "catenary profile (1/" << lambda_ << ")*cosh(" << lambda_ << "*s + " << mu_ << ")";
        return os.str();
    }

  private:
    double lambda_, mu_;
};

/// g(s) = -(1/2) ln|cos(2s + c2)| + c3, the profile solving g'' = 2 g'^2 + 2
/// on the maximal branch around its minimum.
class LogCosProfile final : public ProfileImpl {
  public:
    LogCosProfile(double c2, double c3, Interval dom) : c2_(c2), c3_(c3), dom_(dom) {}
    ScalarJet jet(double s, int) const override {
        const double t = 2 * s + c2_;
        const double tn = std::tan(t);
        const double sec2 = 1.0 + tn * tn;
        ScalarJet j;
        j.value = -0.5 * std::log(std::fabs(std::cos(t))) + c3_;
        j.d1 = tn;
        j.d2 = 2 * sec2;
        j.d3 = 8 * sec2 * tn;
        return j;
    }
    Interval domain() const override { return dom_; }
    int max_order() const override { return 3; }
    std::string describe() const override {
        std::ostringstream os;
        os << "log-cos profile -(1/2)ln|cos(2s + " << c2_ << ")| + " << c3_;
        return os.str();
    }

  private:
    double c2_, c3_;
    Interval dom_;
};

/// g(s) = sign * (1/2) arctan(sqrt(exp(4s) - c2^2)/c2) + c3 on s > ln|c2|/2,
/// the profile solving g'' = -2 (1 + g'^2) g'.
class ArctanExpProfile final : public ProfileImpl {
  public:
    ArctanExpProfile(double c2, double c3, int sign) : c2_(c2), c3_(c3), sign_(sign) {}
    ScalarJet jet(double s, int) const override {
        const double e4 = std::exp(4 * s);
        // e4 - c2^2 > 0 holds strictly inside the domain; tiny negative
        // roundoff right at the edge is cut off by the open-domain check.
        const double r2 = e4 - c2_ * c2_;
        const double r = std::sqrt(r2);
        const double sg = static_cast<double>(sign_);
        ScalarJet j;
        j.value = sg * 0.5 * std::atan(r / c2_) + c3_;
        j.d1 = sg * c2_ / r;
        j.d2 = -sg * 2 * c2_ * e4 / (r2 * r);
        j.d3 = sg * 4 * c2_ * e4 * (3 * c2_ * c2_ + r2) / (r2 * r2 * r);
        return j;
    }
    Interval domain() const override {
        return {0.5 * std::log(std::fabs(c2_)), std::numeric_limits<double>::infinity()};
    }
    int max_order() const override { return 3; }
    std::string describe() const override {
        std::ostringstream os;
        os << "arctan-exp profile " << (sign_ > 0 ? "+" : "-") << "(1/2)arctan(sqrt(e^{4s} - "
           << c2_ * c2_ << ")/" << c2_ << ") + " << c3_;
        return os.str();
    }

  private:
    double c2_, c3_;
    int sign_;
};

/// scale * ln(cos s) on (-pi/2, pi/2); with scale = -1 and +1 these are the
/// two halves of the classical minimal z-graph cos(y)/cos(x).
class LogCosScaledProfile final : public ProfileImpl {
  public:
    explicit LogCosScaledProfile(double scale) : scale_(scale) {}
    ScalarJet jet(double s, int) const override {
        const double tn = std::tan(s);
        const double sec2 = 1.0 + tn * tn;
        return {scale_ * std::log(std::cos(s)), -scale_ * tn, -scale_ * sec2,
                -scale_ * 2 * sec2 * tn};
    }
    Interval domain() const override { return {-1.5707963267948966, 1.5707963267948966}; }
    int max_order() const override { return 3; }
    std::string describe() const override {
        std::ostringstream os;
        os << "profile " << scale_ << "*ln(cos s)";
        return os.str();
    }

  private:
    double scale_;
};

/// Cubic polynomial plus one sinusoid; the "generic smooth profile" used by
/// randomized cross-checks.
class PolySinProfile final : public ProfileImpl {
  public:
    PolySinProfile(double a0, double a1, double a2, double a3, double amp, double omega,
                   double phase)
        : a0_(a0), a1_(a1), a2_(a2), a3_(a3), amp_(amp), omega_(omega), phase_(phase) {}
    ScalarJet jet(double s, int) const override {
        const double t = omega_ * s + phase_;
        const double sn = std::sin(t), cs = std::cos(t);
        ScalarJet j;
        j.value = a0_ + s * (a1_ + s * (a2_ + s * a3_)) + amp_ * sn;
        j.d1 = a1_ + s * (2 * a2_ + 3 * a3_ * s) + amp_ * omega_ * cs;
        j.d2 = 2 * a2_ + 6 * a3_ * s - amp_ * omega_ * omega_ * sn;
        j.d3 = 6 * a3_ - amp_ * omega_ * omega_ * omega_ * cs;
        return j;
    }
    Interval domain() const override { return {}; }
    int max_order() const override { return 3; }
    std::string describe() const override { return "cubic+sinusoid profile"; }

  private:
    double a0_, a1_, a2_, a3_, amp_, omega_, phase_;
};

}  // namespace detail

inline ProfileFn make_constant(double c) {
    return ProfileFn(std::make_shared<detail::ConstantProfile>(c));
}

inline ProfileFn make_linear(double c0, double c1) {
    return ProfileFn(std::make_shared<detail::LinearProfile>(c0, c1));
}

/// (1/lambda) cosh(lambda s + mu).  lambda must be nonzero.
inline ProfileFn make_catenary(double lambda, double mu) {
    if (lambda == 0.0) throw BadParam("catenary profile needs lambda != 0");
    return ProfileFn(std::make_shared<detail::CatenaryProfile>(lambda, mu));
}

/// -(1/2) ln|cos(2s + c2)| + c3 on the maximal branch around s = -c2/2
/// (between consecutive zeros of cos(2s + c2)).
inline ProfileFn make_logcos(double c2, double c3) {
    const double pi4 = 0.78539816339744831;
    Interval dom{-pi4 - 0.5 * c2, pi4 - 0.5 * c2};
    return ProfileFn(std::make_shared<detail::LogCosProfile>(c2, c3, dom));
}

/// sign*(1/2) arctan(sqrt(exp(4s) - c2^2)/c2) + c3 on s > ln|c2|/2.
/// c2 must be nonzero; sign must be +1 or -1.
inline ProfileFn make_arctan_exp(double c2, double c3, int sign = +1) {
    if (c2 == 0.0) throw BadParam("arctan-exp profile needs c2 != 0");
    if (sign != 1 && sign != -1) throw BadParam("branch sign must be +1 or -1");
    return ProfileFn(std::make_shared<detail::ArctanExpProfile>(c2, c3, sign));
}

/// scale * ln(cos s) on (-pi/2, pi/2).
inline ProfileFn make_log_cos_scaled(double scale) {
    return ProfileFn(std::make_shared<detail::LogCosScaledProfile>(scale));
}

/// a0 + a1 s + a2 s^2 + a3 s^3 + amp sin(omega s + phase).
inline ProfileFn make_poly_sin(double a0, double a1, double a2, double a3, double amp,
                               double omega, double phase) {
    return ProfileFn(
        std::make_shared<detail::PolySinProfile>(a0, a1, a2, a3, amp, omega, phase));
}

}  // namespace ssm
