#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "ssm/errors.hpp"

namespace ssm {

/// Tolerances and guards for the adaptive integrator.
struct OdeConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// Largest step allowed; 0 means "span of the integration interval".
    double max_step = 0.0;
    /// Minimal distance solver/profile abscissas must keep from poles of the
    /// right-hand side (family constructors decide what the pole is).
    double singularity_guard = 1e-6;
    int max_steps = 200000;
};

struct OdeStats {
    int steps_accepted = 0;
    int steps_rejected = 0;
    /// Max over accepted steps of the estimated local error (absolute,
    /// per-component scale units); an a-posteriori interpolation error bound.
    double max_local_error = 0.0;
    double last_step = 0.0;
};

/// Piecewise-quartic dense output of one integration run: value and first
/// derivative of the interpolant anywhere in [x_begin, x_end].  The
/// interpolant is C1 across steps (it matches value and slope at both step
/// ends), so its derivative is a meaningful independent reconstruction of y'.
template <int N>
class DenseSolution {
  public:
    struct Segment {
        double x0 = 0.0;
        double h = 0.0;
        // Monomial coefficients in theta = (x - x0)/h, per component.
        std::array<std::array<double, 5>, N> coef{};
    };

    DenseSolution(double x_begin, double x_end, std::vector<Segment> segs, OdeStats stats)
        : x_begin_(x_begin), x_end_(x_end), segs_(std::move(segs)), stats_(stats) {}

    double x_begin() const { return x_begin_; }
    double x_end() const { return x_end_; }
    const OdeStats& stats() const { return stats_; }

    std::array<double, N> eval(double x) const {
        const Segment& s = locate(x);
        const double th = (x - s.x0) / s.h;
        std::array<double, N> out{};
        for (int c = 0; c < N; ++c) {
            const auto& a = s.coef[static_cast<std::size_t>(c)];
            out[static_cast<std::size_t>(c)] =
                a[0] + th * (a[1] + th * (a[2] + th * (a[3] + th * a[4])));
        }
        return out;
    }

    /// d/dx of the interpolant (not a re-evaluation of the right-hand side).
    std::array<double, N> eval_derivative(double x) const {
        const Segment& s = locate(x);
        const double th = (x - s.x0) / s.h;
        std::array<double, N> out{};
        for (int c = 0; c < N; ++c) {
            const auto& a = s.coef[static_cast<std::size_t>(c)];
            out[static_cast<std::size_t>(c)] =
                (a[1] + th * (2 * a[2] + th * (3 * a[3] + th * 4 * a[4]))) / s.h;
        }
        return out;
    }

  private:
    const Segment& locate(double x) const {
        if (!(x >= x_begin_ && x <= x_end_)) {
            std::ostringstream os;
            os << "abscissa " << x << " outside tabulated range [" << x_begin_ << ", " << x_end_
               << "]";
            throw DomainError(os.str());
        }
        // Last segment whose start is <= x.
        std::size_t lo = 0, hi = segs_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi + 1) / 2;
            if (segs_[mid].x0 <= x)
                lo = mid;
            else
                hi = mid - 1;
        }
        return segs_[lo];
    }

    double x_begin_, x_end_;
    std::vector<Segment> segs_;
    OdeStats stats_;
};

/// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince pair) with quartic
/// dense output, integrating y' = rhs(x, y) forward from x0 to x_end.
/// Throws StepFailure with the failing abscissa and last step size when the
/// step underflows near a blow-up or the step budget is exhausted.
template <int N, class RHS>
DenseSolution<N> integrate_dopri5(RHS&& rhs, double x0, double x_end,
                                  const std::array<double, N>& y0, const OdeConfig& cfg = {}) {
    using State = std::array<double, N>;
    if (!(x_end > x0)) throw BadParam("integration interval must satisfy x_end > x0");
    if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) throw BadParam("tolerances must be positive");

    // Dormand-Prince coefficients.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    // Dense-output weights.
    constexpr double d1 = -12715105075.0 / 11282082432.0;
    constexpr double d3 = 87487479700.0 / 32700410799.0;
    constexpr double d4 = -10690763975.0 / 1880347072.0;
    constexpr double d5 = 701980252875.0 / 199316789632.0;
    constexpr double d6 = -1453857185.0 / 822651844.0;
    constexpr double d7 = 69997945.0 / 29380423.0;

    const double span = x_end - x0;
    const double hmax = cfg.max_step > 0.0 ? std::min(cfg.max_step, span) : span;

    std::vector<typename DenseSolution<N>::Segment> segs;
    OdeStats stats;

    double x = x0;
    State y = y0;
    State k1 = rhs(x, y);
    double h = std::min(hmax, span / 100.0);
    if (!(h > 0.0)) h = span;
    bool just_rejected = false;

    auto axpy = [](State& out, const State& base, double hh, std::initializer_list<std::pair<double, const State*>> terms) {
        for (int i = 0; i < N; ++i) {
            double acc = 0.0;
            for (const auto& t : terms) acc += t.first * (*t.second)[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)] + hh * acc;
        }
    };

    int total_steps = 0;
    while (x < x_end) {
        if (++total_steps > cfg.max_steps) {
            std::ostringstream os;
            os << "step budget exhausted at x = " << x << " with step h = " << h;
            throw StepFailure(os.str());
        }
        if (x + h > x_end) h = x_end - x;
        const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::fabs(x) +
                            1e-14 * span;
        if (h < hmin) {
            std::ostringstream os;
            os << "step size underflow at x = " << x << " (h = " << h << ")";
            throw StepFailure(os.str());
        }

        State yt, k2, k3, k4, k5, k6, k7, ynew;
        axpy(yt, y, h, {{a21, &k1}});
        k2 = rhs(x + c2 * h, yt);
        axpy(yt, y, h, {{a31, &k1}, {a32, &k2}});
        k3 = rhs(x + c3 * h, yt);
        axpy(yt, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        k4 = rhs(x + c4 * h, yt);
        axpy(yt, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        k5 = rhs(x + c5 * h, yt);
        axpy(yt, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        k6 = rhs(x + h, yt);
        axpy(ynew, y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        k7 = rhs(x + h, ynew);

        // Scaled RMS error of the embedded 4th-order comparison.
        double err = 0.0, errabs = 0.0;
        for (int i = 0; i < N; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            const double ei = h * (e1 * k1[ii] + e3 * k3[ii] + e4 * k4[ii] + e5 * k5[ii] +
                                   e6 * k6[ii] + e7 * k7[ii]);
            const double sc = cfg.atol + cfg.rtol * std::max(std::fabs(y[ii]), std::fabs(ynew[ii]));
            err += (ei / sc) * (ei / sc);
            errabs = std::max(errabs, std::fabs(ei));
        }
        err = std::sqrt(err / N);

        if (err <= 1.0) {
            typename DenseSolution<N>::Segment seg;
            seg.x0 = x;
            seg.h = h;
            for (int i = 0; i < N; ++i) {
                const std::size_t ii = static_cast<std::size_t>(i);
                const double dy = ynew[ii] - y[ii];
                const double r1 = y[ii];
                const double r2 = dy;
                const double r3 = h * k1[ii] - dy;
                const double r4 = dy - h * k7[ii] - r3;
                const double r5 = h * (d1 * k1[ii] + d3 * k3[ii] + d4 * k4[ii] + d5 * k5[ii] +
                                       d6 * k6[ii] + d7 * k7[ii]);
                seg.coef[ii] = {r1, r2 + r3, r4 + r5 - r3, -r4 - 2 * r5, r5};
            }

            // Defect control: the returned object is the interpolant, so the
            // step must also keep the interpolant's own residual
            // u'(x) - rhs(x, u(x)) inside the tolerance band.  The defect
            // vanishes at both step ends (the quartic matches k1 and k7), so
            // sample it at interior points and reject on overflow; the defect
            // scales like h^4, hence the fourth-root step cut.
            double defect = 0.0;
            for (const double th : {0.3, 0.6, 0.85}) {
                State u, up;
                for (int i = 0; i < N; ++i) {
                    const std::size_t ii = static_cast<std::size_t>(i);
                    const auto& a = seg.coef[ii];
                    u[ii] = a[0] + th * (a[1] + th * (a[2] + th * (a[3] + th * a[4])));
                    up[ii] = (a[1] + th * (2 * a[2] + th * (3 * a[3] + th * 4 * a[4]))) / h;
                }
                const State fu = rhs(x + th * h, u);
                for (int i = 0; i < N; ++i) {
                    const std::size_t ii = static_cast<std::size_t>(i);
                    const double sc =
                        cfg.atol + cfg.rtol * std::max({std::fabs(k1[ii]), std::fabs(k7[ii]),
                                                        std::fabs(fu[ii])});
                    defect = std::max(defect, std::fabs(up[ii] - fu[ii]) / sc);
                }
            }
            if (defect > 1.0) {
                stats.steps_rejected += 1;
                h *= std::clamp(0.9 * std::pow(defect, -0.25), 0.1, 0.9);
                just_rejected = true;
                continue;
            }

            // Accept: store the dense segment, then advance (FSAL).
            segs.push_back(seg);
            stats.steps_accepted += 1;
            stats.max_local_error = std::max(stats.max_local_error, errabs);
            stats.last_step = h;
            x += h;
            y = ynew;
            k1 = k7;
            double fac = 0.9 * std::pow(err > 1e-30 ? err : 1e-30, -0.2);
            // Whichever constraint is binding limits the growth.
            fac = std::min(fac, 0.9 * std::pow(defect > 1e-30 ? defect : 1e-30, -0.25));
            fac = std::clamp(fac, 0.2, just_rejected ? 1.0 : 5.0);
            h = std::min(h * fac, hmax);
            just_rejected = false;
        } else {
            stats.steps_rejected += 1;
            const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            h *= fac;
            just_rejected = true;
        }
    }
    return DenseSolution<N>(x0, x_end, std::move(segs), stats);
}

}  // namespace ssm
