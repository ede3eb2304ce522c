#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "vpair/numerics/quadrature.hpp"
#include "vpair/numerics/roots.hpp"

using namespace vpair;
using namespace vpair::numerics;
using Catch::Approx;

namespace {

// Plain bisection, kept separate from the Brent implementation under test.
template <class G>
double bisect(G g, double lo, double hi, double tol) {
    double glo = g(lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("integrate closed forms", "[numerics][quadrature]") {
    CHECK(std::abs(integrate([](double x) { return x * x; }, 0.0, 1.0, {1e-12, 0.0, 30}) - 1.0 / 3.0) < 1e-10);

    const double arctan_form = 861.0 - std::atan(861.0);
    CHECK(rel(integrate([](double x) { return x * x / (x * x + 1.0); }, 0.0, 861.0, {1e-12, 0.0, 40}),
              arctan_form) < 1e-8);

    const double pi4_15 = std::pow(std::numbers::pi, 4) / 15.0;
    auto planck = [](double x) { return x == 0.0 ? 0.0 : x * x * x / std::expm1(x); };
    CHECK(rel(integrate_to_infinity(planck, 0.0, {1e-12, 0.0, 40}), pi4_15) < 1e-8);

    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("integrate errors", "[numerics][quadrature]") {
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, -1.0, 1.0), NonFiniteIntegrand);
    CHECK_THROWS_AS(integrate([](double x) { return std::log(x); }, -1.0, 1.0), NonFiniteIntegrand);
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-300)); }, 0.0, 1.0, {1e-14, 0.0, 3}),
                    MaxDepthExceeded);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, {0.0, 0.0, 10}), PreconditionError);
}

TEST_CASE("integrate is linear and additive", "[numerics][quadrature][property]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const QuadratureSpec spec{1e-12, 1e-14, 40};
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha = u(rng), beta = u(rng), w = 1.0 + std::abs(u(rng));
        auto f = [&](double x) { return std::exp(-w * x) * std::cos(3.0 * x); };
        auto g = [&](double x) { return x * x / (x * x + w); };
        const double a = 0.0, c = 5.0, b = 0.5 + 4.0 * std::abs(u(rng)) / 2.0;

        const double lhs = integrate([&](double x) { return alpha * f(x) + beta * g(x); }, a, c, spec);
        const double rhs = alpha * integrate(f, a, c, spec) + beta * integrate(g, a, c, spec);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));

        const double split = integrate(g, a, b, spec) + integrate(g, b, c, spec);
        CHECK(std::abs(split - integrate(g, a, c, spec)) <= 1e-10 * std::abs(split));
    }
}

TEST_CASE("find_root", "[numerics][roots]") {
    CHECK(std::abs(find_root([](double x) { return x * x - 2.0; }, {1.0, 2.0, 1e-12}) - std::sqrt(2.0)) < 1e-10);

    SECTION("electron-only cutoff equation against bisection") {
        const double target = 2.0 * std::numbers::pi * 137.035999;
        auto g = [&](double x) { return x - std::atan(x) - target; };
        const double oracle = bisect(g, 800.0, 900.0, 1e-6);
        const double root = find_root(g, {800.0, 900.0, 1e-9});
        CHECK(std::abs(root - oracle) < 1e-6);
        CHECK(root == Approx(862.5922).margin(1e-3));
    }

    SECTION("no sign change") {
        CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0, 1e-9}), NoSignChange);
    }

    SECTION("iteration limit") {
        CHECK_THROWS_AS(find_root([](double x) { return std::cbrt(x - 0.3); }, {-1.0, 1.0, 1e-300, 3}),
                        MaxIterExceeded);
    }

    SECTION("invalid bracket") {
        CHECK_THROWS_AS(find_root([](double x) { return x; }, {1.0, -1.0, 1e-9}), PreconditionError);
    }

    SECTION("deterministic") {
        auto g = [](double x) { return std::exp(x) - 3.0; };
        CHECK(find_root(g, {0.0, 5.0, 1e-12}) == find_root(g, {0.0, 5.0, 1e-12}));
    }
}

TEST_CASE("find_root invariant under monotone rescaling", "[numerics][roots][property]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    const double tol = 1e-10;
    for (int trial = 0; trial < 100; ++trial) {
        const double r = u(rng);
        auto g = [&](double x) { return std::tanh(4.0 * (x - r)); };
        const double base = find_root(g, {0.0, 1.0, tol});
        const double scaled = find_root([&](double x) { return 1e6 * g(x); }, {0.0, 1.0, tol});
        const double cubed = find_root([&](double x) { return std::pow(g(x), 3.0); }, {0.0, 1.0, tol});
        CHECK(std::abs(base - r) <= tol);
        CHECK(std::abs(scaled - base) <= tol);
        CHECK(std::abs(cubed - base) <= tol);
    }
}

TEST_CASE("maximize", "[numerics]") {
    CHECK(maximize([](double x) { return -(x - 1.25) * (x - 1.25); }, 0.0, 3.0) == Approx(1.25).margin(1e-9));
    CHECK_THROWS_AS(maximize([](double x) { return x; }, 1.0, 0.0), PreconditionError);
}
