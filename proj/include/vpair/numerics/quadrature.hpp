#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature.
//
// The interval with the largest error estimate is bisected until the summed
// estimate satisfies max(abs_tol, rel_tol*|I|). Semi-infinite ranges are
// mapped onto [0,1) with x = a + s*t/(1-t); the endpoint t=1 is never
// evaluated by the Kronrod rule.

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "vpair/errors.hpp"

namespace vpair::numerics {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_depth = 40;

    void validate() const {
        if (!(rel_tol > 0.0)) throw PreconditionError("QuadratureSpec: rel_tol must be > 0");
        if (!(abs_tol >= 0.0)) throw PreconditionError("QuadratureSpec: abs_tol must be >= 0");
        if (max_depth < 1) throw PreconditionError("QuadratureSpec: max_depth must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

namespace detail {

// Kronrod nodes (non-negative half) and weights; Gauss weights on the odd nodes.
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> k15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b, int depth, int& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto eval = [&](double x) {
        const double y = static_cast<double>(f(x));
        if (!std::isfinite(y))
            throw NonFiniteIntegrand("integrand is not finite at x = " + std::to_string(x));
        return y;
    };

    const double fc = eval(center);
    double kronrod = k15_weights[7] * fc;
    double gauss = g7_weights[3] * fc;
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * gk15_nodes[i];
        const double pair = eval(center - dx) + eval(center + dx);
        kronrod += k15_weights[i] * pair;
        if (i % 2 == 1) gauss += g7_weights[i / 2] * pair;
    }
    evals += 15;
    const double value = kronrod * half;
    const double error = std::abs((kronrod - gauss) * half);
    return {a, b, value, error, depth};
}

} // namespace detail

/// Integrates f over [a, b] and reports the error estimate.
template <class F>
QuadratureResult integrate_detailed(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(a <= b)) throw PreconditionError("integrate: requires a <= b");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw PreconditionError("integrate: bounds must be finite (use integrate_to_infinity)");
    QuadratureResult out;
    if (a == b) return out;

    // Hard cap on live segments so a pathological integrand cannot exhaust memory.
    constexpr std::size_t max_segments = 1u << 16;

    std::priority_queue<detail::Segment> heap;
    heap.push(detail::gk15(f, a, b, 0, out.evaluations));
    double total = heap.top().value;
    double error = heap.top().error;

    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        // Estimates below round-off cannot be reduced further.
        if (error <= 50.0 * std::numeric_limits<double>::epsilon() * std::abs(total)) break;
        detail::Segment worst = heap.top();
        if (worst.depth >= spec.max_depth || heap.size() >= max_segments)
            throw MaxDepthExceeded("integrate: tolerance not reached (error estimate " +
                                   std::to_string(error) + ")");
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15(f, worst.a, mid, worst.depth + 1, out.evaluations);
        auto right = detail::gk15(f, mid, worst.b, worst.depth + 1, out.evaluations);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to avoid drift from the incremental updates.
    total = 0.0;
    error = 0.0;
    out.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error = error;
    return out;
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    return integrate_detailed(std::forward<F>(f), a, b, spec).value;
}

/// Integrates f over [a, inf) via x = a + scale*t/(1-t).
///
/// `scale` should be the characteristic width of the integrand so the mapped
/// function is spread over [0,1).
template <class F>
double integrate_to_infinity(F&& f, double a, const QuadratureSpec& spec = {}, double scale = 1.0) {
    if (!(scale > 0.0)) throw PreconditionError("integrate_to_infinity: scale must be > 0");
    auto mapped = [&](double t) {
        const double u = 1.0 - t;
        const double x = a + scale * t / u;
        const double y = static_cast<double>(f(x));
        return y == 0.0 ? 0.0 : y * scale / (u * u);
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

} // namespace vpair::numerics
