#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "vpair/vacuum_response.hpp"

using namespace vpair;
using namespace vpair::vacuum;
using Catch::Approx;

namespace {

const double me = PC::electron_mass_energy;

ParticleSpecies electron_species() { return default_registry().at("e"); }

/// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("dipole moments", "[vacuum][dipole]") {
    const double w = 1.0e21;

    SECTION("matches <1|x|0> of the oscillator") {
        const double m = PC::mass_kg(me);
        const double length = std::sqrt(PC::hbar / (m * w));
        const double norm = std::pow(PC::pi, -0.25);
        auto psi0 = [&](double xi) { return norm * std::exp(-xi * xi / 2.0); };
        auto psi1 = [&](double xi) { return norm * std::sqrt(2.0) * xi * std::exp(-xi * xi / 2.0); };
        const double matrix = simpson([&](double xi) { return psi1(xi) * xi * psi0(xi); }, -12.0, 12.0, 4000);
        CHECK(dipole_max(me, w) == Approx(PC::q_e * matrix * length).epsilon(1e-10));
    }

    SECTION("omega^{-1/2} scaling") {
        CHECK(dipole_max(me, 4.0 * w) == Approx(dipole_max(me, w) / 2.0).epsilon(1e-14));
        CHECK(dipole_max(4.0 * me, w) == Approx(dipole_max(me, w) / 2.0).epsilon(1e-14));
    }

    SECTION("time average equals 2 d_max^2 E / (hbar omega)") {
        for (double field : {0.0, 1.0, 3.5e8}) {
            const double d = dipole_max(me, w);
            CHECK(dipole_time_averaged(me, w, field) ==
                  Approx(2.0 * d * d * field / (PC::hbar * w)).epsilon(1e-13).margin(1e-300));
        }
        CHECK(dipole_time_averaged(me, w, 0.0) == 0.0);
    }

    CHECK_THROWS_AS(dipole_max(0.0, w), PreconditionError);
    CHECK_THROWS_AS(dipole_max(me, -1.0), PreconditionError);
    CHECK_THROWS_AS(dipole_time_averaged(me, w, -1.0), PreconditionError);
}

TEST_CASE("x - arctan x", "[vacuum]") {
    for (double x : {1e-8, 1e-4, 0.01, 0.0999, 0.1, 0.5, 3.0, 1e4}) {
        // long double reference: direct difference away from the cancellation region, series below it
        const long double lx = x;
        long double ref = lx - std::atan(lx);
        if (x < 0.1) {
            ref = 0.0L;
            long double term = lx * lx * lx;
            for (int k = 0; k < 30; ++k, term *= -lx * lx) ref += term / (2 * k + 3);
        }
        CHECK(x_minus_arctan(x) == Approx(static_cast<double>(ref)).epsilon(1e-13));
    }
    // continuous across the series/direct switch
    CHECK(x_minus_arctan(std::nextafter(0.1, 0.0)) == Approx(x_minus_arctan(0.1)).epsilon(1e-13));
}

TEST_CASE("single species inverse alpha", "[vacuum][alpha]") {
    const auto e = electron_species();

    SECTION("electron alone at 861 m_e") {
        CHECK(inverse_alpha_single(e, 861.0 * me) == Approx(136.8).margin(0.1));
    }

    SECTION("small cutoff approaches the cubic law") {
        const double a = 1e-3 * me;
        CHECK(inverse_alpha_single(e, a) == Approx(inverse_alpha_single_fixed_gap(e, a)).epsilon(1e-6));
    }

    SECTION("cutoff at the rest energy is a tiny fraction of the measured value") {
        CHECK(inverse_alpha_single(e, me) / PC::inverse_alpha_target < 1e-3);
    }

    SECTION("quadrature agrees with closed form") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> lm(std::log(0.1), std::log(1e5));
        std::uniform_real_distribution<double> la(std::log(1.0), std::log(1e5));
        for (int i = 0; i < 100; ++i) {
            ParticleSpecies s{"x", std::exp(lm(rng)), 2.0 / 3.0, 3, 2};
            const double a = std::exp(la(rng));
            const double closed = inverse_alpha_single(s, a);
            CHECK(std::abs(inverse_alpha_single_quadrature(s, a) - closed) / closed < 1e-10);
        }
    }

    SECTION("monotone increasing in the cutoff") {
        double previous = 0.0;
        for (double a = 0.1; a < 1e6; a *= 1.7) {
            const double v = inverse_alpha_single(e, a);
            CHECK(v > previous);
            previous = v;
        }
    }

    CHECK_THROWS_AS(inverse_alpha_single(e, 0.0), PreconditionError);
}

TEST_CASE("total inverse alpha and breakdown", "[vacuum][alpha]") {
    const auto reg = default_registry();
    const auto b = inverse_alpha_total(reg, GlobalConstant{292.0});

    double sum = 0.0;
    for (const auto& c : b.per_species) sum += c.inverse_alpha;
    CHECK(b.total_inverse_alpha == Approx(sum).epsilon(1e-15));
    CHECK(b.per_species.size() == reg.size());
    CHECK(b.contribution("e") == Approx(inverse_alpha_single(reg.at("e"), 292.0)).epsilon(1e-15));

    const auto order = b.ranking();
    REQUIRE(order.size() >= 2);
    CHECK(order[0] == "e");
    CHECK(order[1] == "u");

    SECTION("per-species policy with fallback") {
        PerSpecies policy{{{"e", 100.0}}, 50.0};
        const auto p = inverse_alpha_total(reg, policy);
        CHECK(p.contribution("e") == Approx(inverse_alpha_single(reg.at("e"), 100.0)));
        CHECK(p.contribution("mu") == Approx(inverse_alpha_single(reg.at("mu"), 50.0)));
    }

    SECTION("errors") {
        CHECK_THROWS_AS(inverse_alpha_total(SpeciesRegistry{}, GlobalConstant{292.0}), EmptyRegistry);
        CHECK_THROWS_AS(inverse_alpha_total(reg, GlobalConstant{-1.0}), PreconditionError);
        CHECK_THROWS_AS(inverse_alpha_total(reg, MassProportional{0.0}), PreconditionError);
    }
}

TEST_CASE("fixed gap model", "[vacuum][alpha]") {
    const auto reg = default_registry();

    SECTION("closed form equals the density route") {
        for (double a : {0.5, 1.0, 6.478, 20.0})
            CHECK(inverse_alpha_fixed_gap_from_density(reg, a) ==
                  Approx(inverse_alpha_fixed_gap(reg, a)).epsilon(1e-10));
    }

    SECTION("registry total matches the sum of single-species terms") {
        const double a = 6.0;
        const auto b = inverse_alpha_total(reg, MassProportional{a});
        CHECK(b.total_inverse_alpha == Approx(inverse_alpha_fixed_gap(reg, a)).epsilon(1e-13));
    }

    SECTION("cubic in a") {
        CHECK(inverse_alpha_fixed_gap(reg, 2.0) == Approx(8.0 * inverse_alpha_fixed_gap(reg, 1.0)).epsilon(1e-14));
        CHECK(inverse_alpha_fixed_gap(reg, 1e-5) < 1e-14);
    }

    SECTION("mass independent") {
        auto e = electron_species();
        auto heavy = e;
        heavy.mass_mev = 1000.0;
        CHECK(inverse_alpha_single_fixed_gap(e, 3.0 * e.mass_mev) ==
              Approx(inverse_alpha_single_fixed_gap(heavy, 3.0 * heavy.mass_mev)).epsilon(1e-14));
    }
}

TEST_CASE("cutoff fits", "[vacuum][fit]") {
    const auto reg = default_registry();
    const double target = PC::inverse_alpha_target;

    SECTION("global constant") {
        const auto fit = fit_cutoff(reg, target, PolicyKind::GlobalConstant);
        CHECK(fit.value > 280.0);
        CHECK(fit.value < 300.0);
        CHECK(std::abs(fit.achieved_inverse_alpha - target) < 1e-3);
    }

    SECTION("electron only") {
        const auto fit = fit_cutoff(reg.subset({"e"}), target, PolicyKind::GlobalConstant);
        CHECK(fit.value / me == Approx(862.6).margin(0.1));
    }

    SECTION("mass proportional closed form and root agree") {
        const auto fit = fit_cutoff(reg, target, PolicyKind::MassProportional);
        CHECK(fit.value == Approx(std::cbrt(6.0 * PC::pi * target / 9.5)).epsilon(1e-14));
        CHECK(std::abs(fit.value - fit.cross_check) < 1e-7);
        CHECK(fit.achieved_inverse_alpha == Approx(target).epsilon(1e-12));
    }

    SECTION("round trip and monotonicity in the target") {
        double previous = 0.0;
        for (double t : {50.0, 100.0, 137.0, 200.0}) {
            const auto fit = fit_cutoff(reg, t, PolicyKind::GlobalConstant);
            CHECK(std::abs(inverse_alpha_total(reg, GlobalConstant{fit.value}).total_inverse_alpha - t) < 1e-3);
            CHECK(fit.value > previous);
            previous = fit.value;
        }
    }

    CHECK_THROWS_AS(fit_cutoff(reg, 0.0, PolicyKind::GlobalConstant), PreconditionError);
    CHECK_THROWS_AS(fit_cutoff(SpeciesRegistry{}, target, PolicyKind::MassProportional), EmptyRegistry);
}

TEST_CASE("average pair volume", "[vacuum]") {
    const auto e = electron_species();
    const double lc = compton_length(me);
    CHECK(lc == Approx(3.8615926796e-13).epsilon(1e-9));

    const double a = std::cbrt(6.0 * PC::pi * PC::inverse_alpha_target / 9.5);
    const double ratio = average_pair_volume(e, a) / (lc * lc * lc);
    CHECK(ratio > 0.213);
    CHECK(ratio < 0.223);
    CHECK(average_pair_volume(e, 2.0 * a) == Approx(average_pair_volume(e, a) / 8.0).epsilon(1e-14));

    // 1 / integral of the vacuum density up to p = a m c
    const double p_max = a * me * PC::mev_to_joule / PC::c;
    const double n = numerics::integrate(statmech::vacuum_density, 0.0, p_max, {1e-13, 0.0, 30});
    CHECK(average_pair_volume(e, a) == Approx(1.0 / n).epsilon(1e-10));
}

TEST_CASE("vacuum permittivity and permeability", "[vacuum]") {
    const auto v = permeability_from_alpha(PC::inverse_alpha_target);
    CHECK(v.epsilon0 == Approx(8.8541878128e-12).epsilon(1e-8));
    CHECK(v.speed_of_light_defined);
    CHECK(v.epsilon0 / v.inv_mu0 * PC::c * PC::c == Approx(1.0).epsilon(1e-15));
    CHECK(v.speed_of_light == Approx(PC::c).epsilon(1e-15));

    const auto zero = permeability_from_alpha(0.0);
    CHECK_FALSE(zero.speed_of_light_defined);
    CHECK(std::isnan(zero.speed_of_light));
    CHECK_THROWS_AS(permeability_from_alpha(-1.0), PreconditionError);
}

TEST_CASE("magnetic moments", "[vacuum][magnetic]") {
    CHECK(relativistic_magnetic_moment(me) == Approx(9.2740100783e-24).epsilon(1e-9));
    CHECK(relativistic_magnetic_moment(3.0 * me) == Approx(relativistic_magnetic_moment(me) / 3.0).epsilon(1e-14));
    for (double eps : {me, 10.0, 1000.0}) {
        const double d = pair_electric_dipole(1.0, dipole_distance(eps));
        CHECK(relativistic_magnetic_moment(eps) == Approx(d * PC::c / 2.0).epsilon(1e-14));
    }
    CHECK(dipole_distance(me) == Approx(compton_length(me)).epsilon(1e-15));
    CHECK_THROWS_AS(relativistic_magnetic_moment(0.0), PreconditionError);
}

TEST_CASE("Landau levels", "[vacuum][landau]") {
    SECTION("zero field gives the free dispersion") {
        LandauInput in{me, 0.3};
        for (auto mode : {LandauMode::Relativistic, LandauMode::FirstOrder})
            CHECK(landau_energy(in, mode) == Approx(std::hypot(me, 0.3)).epsilon(1e-15));
        CHECK(landau_energy(in, LandauMode::NonRelativistic) == Approx(me + 0.09 / (2.0 * me)).epsilon(1e-15));
    }

    SECTION("first order tracks the exact form for ordinary fields") {
        for (long long n : {0LL, 1LL, 10LL})
            for (double s : {0.5, -0.5}) {
                LandauInput in{me, 0.2, 10.0, n, 2.0, s};
                const double exact = landau_energy(in, LandauMode::Relativistic);
                CHECK(std::abs(landau_energy(in, LandauMode::FirstOrder) - exact) / exact < 1e-9);
            }
    }

    SECTION("non-relativistic form within its Taylor remainder") {
        for (double pz : {1e-3, 1e-2, 5e-2}) {
            LandauInput in{me, pz, 1.0, 3};
            const double fo = landau_energy(in, LandauMode::FirstOrder);
            const double nr = landau_energy(in, LandauMode::NonRelativistic);
            // sqrt(m^2+p^2) - m - p^2/2m is bounded by p^4/(8 m^3)
            CHECK(std::abs(nr - fo) <= std::pow(pz, 4) / (8.0 * me * me * me) * 1.01 + 1e-12);
        }
    }

    SECTION("ground state with g = 2 is field independent") {
        LandauInput in{me, 0.0, 1e3, 0, 2.0, 0.5};
        CHECK(landau_energy(in, LandauMode::Relativistic) == Approx(me).epsilon(1e-15));
    }

    SECTION("negative radicand") {
        LandauInput in{me, 0.0, 1e12, 0, 10.0, 0.5};
        CHECK_THROWS_AS(landau_energy(in, LandauMode::Relativistic), NegativeRadicand);
    }

    CHECK_THROWS_AS(landau_energy({me, 0.0, 1.0, 0, 2.0, 0.3}, LandauMode::FirstOrder), PreconditionError);
    CHECK_THROWS_AS(landau_energy({me, 0.0, -1.0}, LandauMode::FirstOrder), PreconditionError);
}
