#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "ssm/errors.hpp"

namespace ssm {

// ---------------------------------------------------------------------------
// Gauss-Legendre rule (fixed order, used for tensor-product area integrals)
// ---------------------------------------------------------------------------

struct QuadratureRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule, nodes/weights by Newton iteration on the
/// Legendre recurrence.  Exact for polynomials of degree 2n-1.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1 || n > 256) throw BadParam("Gauss-Legendre order must be in [1, 256]");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double pi = 3.14159265358979323846;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_n(x) and derivative via the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

/// Fixed-order Gauss-Legendre integral of f over [a, b].
template <class F>
double integrate_gl(F&& f, double a, double b, int order) {
    const QuadratureRule rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod 7-15 (antiderivatives of profile integrands)
// ---------------------------------------------------------------------------

namespace detail {

// Classical (G7, K15) node/weight pairs on (-1, 1); the Gauss nodes are the
// odd-indexed Kronrod nodes.
inline constexpr double kK15Nodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double kK15Weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double kG7Weights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

template <class F>
void gk15(F&& f, double a, double b, double& value, double& error) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double y = f(mid + half * kK15Nodes[i]);
        k15 += kK15Weights[i] * y;
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * y;
    }
    value = k15 * half;
    error = std::fabs((k15 - g7) * half);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b] to absolute tolerance
/// `tol` (scaled by the accumulated magnitude).  Deterministic worklist
/// bisection; throws StepFailure if the subdivision budget is exhausted.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-12) {
    if (a == b) return 0.0;
    struct Seg {
        double a, b, value, error;
    };
    double v0, e0;
    detail::gk15(f, a, b, v0, e0);
    std::vector<Seg> segs{{a, b, v0, e0}};
    const int max_segments = 4000;
    for (int round = 0; round < max_segments; ++round) {
        double total = 0.0, err = 0.0;
        int worst = -1;
        double worst_err = 0.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].error;
            if (segs[i].error > worst_err) {
                worst_err = segs[i].error;
                worst = static_cast<int>(i);
            }
        }
        if (err <= tol * (1.0 + std::fabs(total)) || worst < 0) return total;
        Seg s = segs[static_cast<std::size_t>(worst)];
        const double m = 0.5 * (s.a + s.b);
        if (!(s.a < m && m < s.b)) return total;  // interval exhausted at roundoff width
        Seg left{s.a, m, 0, 0}, right{m, s.b, 0, 0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        segs[static_cast<std::size_t>(worst)] = left;
        segs.push_back(right);
    }
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b << "] exhausted its subdivision budget";
    throw StepFailure(os.str());
}

/// Integral of f over [a, b] where f has an inverse-square-root singularity
/// at the lower endpoint a: substitutes t = a + tau^2, which turns the
/// integrand into the smooth 2*tau*f(a + tau^2).
template <class F>
double integrate_sqrt_singular_lower(F&& f, double a, double b, double tol = 1e-12) {
    if (!(b >= a)) throw BadParam("integration bounds must satisfy b >= a");
    if (a == b) return 0.0;
    return integrate_adaptive([&f, a](double tau) { return 2.0 * tau * f(a + tau * tau); }, 0.0,
                              std::sqrt(b - a), tol);
}

/// Mirror image of integrate_sqrt_singular_lower: the singularity sits at the
/// upper endpoint b, substituting t = b - tau^2.
template <class F>
double integrate_sqrt_singular_upper(F&& f, double a, double b, double tol = 1e-12) {
    if (!(b >= a)) throw BadParam("integration bounds must satisfy b >= a");
    if (a == b) return 0.0;
    return integrate_adaptive([&f, b](double tau) { return 2.0 * tau * f(b - tau * tau); }, 0.0,
                              std::sqrt(b - a), tol);
}

}  // namespace ssm
