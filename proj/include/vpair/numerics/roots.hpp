#pragma once

// Bracketing root finder (Brent-Dekker) and golden-section maximisation.

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "vpair/errors.hpp"

namespace vpair::numerics {

struct RootSpec {
    double bracket_lo = 0.0;
    double bracket_hi = 1.0;
    double x_tol = 1e-12;
    int max_iter = 200;

    void validate() const {
        if (!(bracket_lo < bracket_hi)) throw PreconditionError("RootSpec: bracket_lo must be < bracket_hi");
        if (!(x_tol > 0.0)) throw PreconditionError("RootSpec: x_tol must be > 0");
        if (max_iter < 1) throw PreconditionError("RootSpec: max_iter must be >= 1");
    }
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    double bracket_width = 0.0;
    int iterations = 0;
};

/// Brent's method. The returned bracket always contains a sign change and
/// is no wider than 2*x_tol (plus round-off) on exit.
template <class G>
RootResult find_root_detailed(G&& g, const RootSpec& spec) {
    spec.validate();
    double a = spec.bracket_lo;
    double b = spec.bracket_hi;
    double fa = g(a);
    double fb = g(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw NoSignChange("find_root: function not finite at bracket ends");
    if (fa == 0.0) return {a, 0.0, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0.0, 0};
    if ((fa > 0.0) == (fb > 0.0))
        throw NoSignChange("find_root: no sign change on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");

    double c = a, fc = fa;
    double d = b - a, e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int iter = 1; iter <= spec.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * eps * std::abs(b) + 0.5 * spec.x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0)
            return {b, fb, std::abs(c - b), iter};

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation, or secant when only two points.
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = g(b);
        if (!std::isfinite(fb)) throw NoSignChange("find_root: function not finite inside bracket");
    }
    throw MaxIterExceeded("find_root: no convergence in " + std::to_string(spec.max_iter) + " iterations");
}

template <class G>
double find_root(G&& g, const RootSpec& spec) {
    return find_root_detailed(std::forward<G>(g), spec).root;
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
double maximize(F&& f, double lo, double hi, double x_tol = 1e-10, int max_iter = 500) {
    if (!(lo < hi)) throw PreconditionError("maximize: requires lo < hi");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if (hi - lo > x_tol) throw MaxIterExceeded("maximize: bracket did not shrink below x_tol");
    return 0.5 * (lo + hi);
}

} // namespace vpair::numerics
