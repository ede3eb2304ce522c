#pragma once

// Vacuum permittivity from virtual pairs modelled as two-level oscillators
// distributed with the vacuum mode density, and the magnetic-moment
// relations that tie epsilon_0, mu_0 and c together.
//
// Energies are MeV and momenta are pc in MeV throughout; SI appears only in
// the dipole, volume, permittivity and magnetic-moment results.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <type_traits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vpair/constants.hpp"
#include "vpair/errors.hpp"
#include "vpair/numerics/quadrature.hpp"
#include "vpair/numerics/roots.hpp"
#include "vpair/species.hpp"
#include "vpair/statmech.hpp"

namespace vpair::vacuum {

// --- Cutoff policies --------------------------------------------------------

/// Same cutoff A [MeV] on pc for every species.
struct GlobalConstant {
    double cutoff_mev;
};

/// Cutoff per species name; species missing from the map use `fallback_mev`.
struct PerSpecies {
    std::map<std::string, double> cutoff_mev;
    double fallback_mev = 0.0;
};

/// A_i = a * m_i c^2.
struct MassProportional {
    double a;
};

using CutoffPolicy = std::variant<GlobalConstant, PerSpecies, MassProportional>;

inline void validate(const CutoffPolicy& policy) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GlobalConstant>) {
                if (!(p.cutoff_mev > 0.0)) throw PreconditionError("cutoff must be > 0");
            } else if constexpr (std::is_same_v<T, PerSpecies>) {
                for (const auto& [name, a] : p.cutoff_mev)
                    if (!(a > 0.0)) throw PreconditionError("cutoff for '" + name + "' must be > 0");
            } else {
                if (!(p.a > 0.0)) throw PreconditionError("mass-proportional factor a must be > 0");
            }
        },
        policy);
}

inline std::string policy_name(const CutoffPolicy& policy) {
    switch (policy.index()) {
        case 0: return "global";
        case 1: return "per-species";
        default: return "mass-proportional";
    }
}

/// Cutoff A_i [MeV] the policy assigns to a species.
inline double cutoff_for(const CutoffPolicy& policy, const ParticleSpecies& s) {
    if (const auto* g = std::get_if<GlobalConstant>(&policy)) return g->cutoff_mev;
    if (const auto* m = std::get_if<MassProportional>(&policy)) return m->a * s.mass_mev;
    const auto& per = std::get<PerSpecies>(policy);
    auto it = per.cutoff_mev.find(s.name);
    const double a = it != per.cutoff_mev.end() ? it->second : per.fallback_mev;
    if (!(a > 0.0)) throw PreconditionError("no cutoff assigned to species '" + s.name + "'");
    return a;
}

/// Level spacing of the pair oscillator.
enum class OscillatorModel {
    /// hbar*omega = 2 sqrt((mc^2)^2 + (pc)^2)
    ModeQuantum,
    /// hbar*omega = 2 mc^2
    FixedGap,
};

inline OscillatorModel default_model(const CutoffPolicy& policy) {
    return std::holds_alternative<MassProportional>(policy) ? OscillatorModel::FixedGap
                                                            : OscillatorModel::ModeQuantum;
}

struct AlphaContribution {
    std::string species;
    double cutoff_mev;
    double inverse_alpha;
};

struct AlphaBreakdown {
    double total_inverse_alpha = 0.0;
    std::vector<AlphaContribution> per_species;

    double contribution(const std::string& name) const {
        for (const auto& c : per_species)
            if (c.species == name) return c.inverse_alpha;
        throw ValidationError("no contribution for species '" + name + "'");
    }
    /// Species names ordered by decreasing contribution.
    std::vector<std::string> ranking() const {
        auto sorted = per_species;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const auto& a, const auto& b) { return a.inverse_alpha > b.inverse_alpha; });
        std::vector<std::string> names;
        for (const auto& c : sorted) names.push_back(c.species);
        return names;
    }
};

// --- Dipole moments (SI) ----------------------------------------------------

/// q_e sqrt(hbar / (2 m omega)) [C m]
inline double dipole_max(double mass_energy_mev, double omega) {
    if (!(mass_energy_mev > 0.0) || !(omega > 0.0))
        throw PreconditionError("dipole_max: requires mass > 0 and omega > 0");
    const double m = PC::mass_kg(mass_energy_mev);
    return PC::q_e * std::sqrt(PC::hbar / (2.0 * m * omega));
}

/// Time-averaged induced dipole q_e^2 E / (m omega^2) [C m]
inline double dipole_time_averaged(double mass_energy_mev, double omega, double field_e) {
    if (!(mass_energy_mev > 0.0) || !(omega > 0.0) || !(field_e >= 0.0))
        throw PreconditionError("dipole_time_averaged: requires mass > 0, omega > 0, E >= 0");
    const double m = PC::mass_kg(mass_energy_mev);
    return PC::q_e * PC::q_e / (m * omega * omega) * field_e;
}

/// Pair oscillator angular frequency for a FixedGap model, 2 mc^2 / hbar.
inline double fixed_gap_omega(double mass_energy_mev) {
    return 2.0 * mass_energy_mev / PC::hbar_mev_s;
}

// --- 1/alpha integrals ------------------------------------------------------

/// x - arctan(x), accurate also for small x where the difference cancels.
inline double x_minus_arctan(double x) {
    if (std::abs(x) < 0.1) {
        // x^3/3 - x^5/5 + x^7/7 - ...
        const double x2 = x * x;
        double term = x * x2;
        double sum = 0.0;
        for (int k = 0; k < 12; ++k) {
            sum += term / (2 * k + 3);
            term *= -x2;
        }
        return sum;
    }
    return x - std::atan(x);
}

/// Integral over pc in [0, A] of (pc)^2 / ((pc)^2 + (mc^2)^2), divided by mc^2,
/// evaluated by quadrature in the reduced variable x = pc/mc^2.
inline double reduced_mode_integral_quadrature(double mass_mev, double cutoff_mev,
                                               const numerics::QuadratureSpec& spec = {1e-13, 0.0, 50}) {
    const double upper = cutoff_mev / mass_mev;
    return numerics::integrate([](double x) { return x * x / (x * x + 1.0); }, 0.0, upper, spec);
}

/// One species' 1/alpha with the ModeQuantum integrand:
/// (1/2pi) Q^2 c (g/2) [A/mc^2 - arctan(A/mc^2)].
inline double inverse_alpha_single(const ParticleSpecies& s, double cutoff_mev) {
    if (!(cutoff_mev > 0.0)) throw PreconditionError("inverse_alpha_single: cutoff must be > 0");
    return s.weight() * x_minus_arctan(cutoff_mev / s.mass_mev) / (2.0 * PC::pi);
}

/// Same quantity by direct quadrature of the integrand.
inline double inverse_alpha_single_quadrature(const ParticleSpecies& s, double cutoff_mev) {
    if (!(cutoff_mev > 0.0)) throw PreconditionError("inverse_alpha_single: cutoff must be > 0");
    return s.weight() * reduced_mode_integral_quadrature(s.mass_mev, cutoff_mev) / (2.0 * PC::pi);
}

/// One species' 1/alpha with the FixedGap integrand,
/// (1/2pi) Q^2 c (g/2) (1/(mc^2)^3) int_0^A (pc)^2 d(pc).
inline double inverse_alpha_single_fixed_gap(const ParticleSpecies& s, double cutoff_mev) {
    if (!(cutoff_mev > 0.0)) throw PreconditionError("cutoff must be > 0");
    const double x = cutoff_mev / s.mass_mev;
    return s.weight() * x * x * x / 3.0 / (2.0 * PC::pi);
}

inline AlphaBreakdown inverse_alpha_total(const SpeciesRegistry& reg, const CutoffPolicy& policy,
                                          OscillatorModel model) {
    if (reg.empty()) throw EmptyRegistry();
    validate(policy);
    AlphaBreakdown out;
    for (const auto& s : reg) {
        const double cutoff = cutoff_for(policy, s);
        const double value = model == OscillatorModel::ModeQuantum
                                 ? inverse_alpha_single(s, cutoff)
                                 : inverse_alpha_single_fixed_gap(s, cutoff);
        out.per_species.push_back({s.name, cutoff, value});
        out.total_inverse_alpha += value;
    }
    return out;
}

inline AlphaBreakdown inverse_alpha_total(const SpeciesRegistry& reg, const CutoffPolicy& policy) {
    return inverse_alpha_total(reg, policy, default_model(policy));
}

/// (1/2pi) S a^3 / 3 with S the weighted degeneracy sum.
inline double inverse_alpha_fixed_gap(const SpeciesRegistry& reg, double a) {
    if (!(a > 0.0)) throw PreconditionError("inverse_alpha_fixed_gap: a must be > 0");
    return weighted_degeneracy_sum(reg) * a * a * a / 3.0 / (2.0 * PC::pi);
}

/// FixedGap 1/alpha written through the vacuum density: for each species the
/// constant prefactor q_e^2/(m omega^2) with hbar*omega = 2mc^2 is pulled out
/// and multiplied by n_i = int_0^{A_i/c} 4 pi p^2/h^3 dp, integrated numerically.
inline double inverse_alpha_fixed_gap_from_density(const SpeciesRegistry& reg, double a) {
    if (reg.empty()) throw EmptyRegistry();
    if (!(a > 0.0)) throw PreconditionError("a must be > 0");
    double epsilon0 = 0.0;
    for (const auto& s : reg) {
        const double p_max = a * s.mass_mev * PC::mev_to_joule / PC::c;
        const double density = numerics::integrate(statmech::vacuum_density, 0.0, p_max, {1e-13, 0.0, 30});
        const double m = PC::mass_kg(s.mass_mev);
        const double omega = fixed_gap_omega(s.mass_mev);
        const double q = s.charge_q * s.charge_scale;
        // Each pair mode contributes Q^2 q_e^2/(m omega^2) per unit field,
        // times colour and (g/2) multiplicities.
        epsilon0 += density * q * q * PC::q_e * PC::q_e / (m * omega * omega) * s.color_factor *
                    (s.spin_degeneracy / 2.0);
    }
    // 1/alpha = 4 pi eps0 hbar c / q_e^2
    return 4.0 * PC::pi * epsilon0 * PC::hbar * PC::c / (PC::q_e * PC::q_e);
}

// --- Cutoff fits ------------------------------------------------------------

enum class PolicyKind { GlobalConstant, MassProportional };

struct CutoffFit {
    CutoffPolicy policy;
    /// A [MeV] or a, depending on the policy kind.
    double value = 0.0;
    /// Independent estimate: root-find result for MassProportional, closed
    /// form is not available for GlobalConstant so this repeats `value`.
    double cross_check = 0.0;
    double achieved_inverse_alpha = 0.0;
    int iterations = 0;
};

inline constexpr double cutoff_fit_tol_mev = 1e-4;
inline constexpr double mass_factor_fit_tol = 1e-8;

inline CutoffFit fit_cutoff(const SpeciesRegistry& reg, double target_inverse_alpha, PolicyKind kind) {
    if (!(target_inverse_alpha > 0.0)) throw PreconditionError("fit_cutoff: target must be > 0");
    if (reg.empty()) throw EmptyRegistry();

    CutoffFit fit;
    if (kind == PolicyKind::GlobalConstant) {
        auto residual = [&](double cutoff) {
            return inverse_alpha_total(reg, GlobalConstant{cutoff}).total_inverse_alpha - target_inverse_alpha;
        };
        double lo = 1e-6;
        double hi = 1.0;
        // 1/alpha grows without bound in A, so expanding the upper edge finds the bracket.
        while (residual(hi) < 0.0) {
            hi *= 10.0;
            if (hi > 1e12) throw NoSignChange("fit_cutoff: target not reachable below A = 1e12 MeV");
        }
        if (residual(lo) > 0.0) throw NoSignChange("fit_cutoff: target below 1/alpha at A = 1e-6 MeV");
        auto root = numerics::find_root_detailed(residual, {lo, hi, cutoff_fit_tol_mev, 300});
        fit.value = root.root;
        fit.cross_check = root.root;
        fit.iterations = root.iterations;
        fit.policy = GlobalConstant{root.root};
    } else {
        const double sum = weighted_degeneracy_sum(reg);
        fit.value = std::cbrt(6.0 * PC::pi * target_inverse_alpha / sum);
        auto root = numerics::find_root_detailed(
            [&](double a) {
                return inverse_alpha_total(reg, MassProportional{a}).total_inverse_alpha - target_inverse_alpha;
            },
            {1e-6, 1e4, mass_factor_fit_tol, 300});
        fit.cross_check = root.root;
        fit.iterations = root.iterations;
        fit.policy = MassProportional{fit.value};
    }
    fit.achieved_inverse_alpha = inverse_alpha_total(reg, fit.policy).total_inverse_alpha;
    return fit;
}

// --- Pair volume and vacuum constants ----------------------------------------

/// Reduced Compton wavelength hbar/(mc) [m]
inline double compton_length(double mass_energy_mev) { return PC::hbar_c_mev_m / mass_energy_mev; }

/// <V> = (6 pi^2 / a^3) (hbar/mc)^3 [m^3]
inline double average_pair_volume(const ParticleSpecies& s, double a) {
    if (!(a > 0.0)) throw PreconditionError("average_pair_volume: a must be > 0");
    const double lc = compton_length(s.mass_mev);
    return 6.0 * PC::pi * PC::pi / (a * a * a) * lc * lc * lc;
}

struct VacuumConstants {
    double epsilon0 = 0.0;  // [F/m]
    double inv_mu0 = 0.0;   // [1/(H/m)]
    bool speed_of_light_defined = false;
    /// sqrt((1/mu0)/eps0) when defined, else NaN.
    double speed_of_light = 0.0;
};

inline VacuumConstants permeability_from_alpha(double inverse_alpha) {
    if (!(inverse_alpha >= 0.0)) throw PreconditionError("permeability_from_alpha: inverse_alpha must be >= 0");
    VacuumConstants out;
    out.epsilon0 = inverse_alpha * PC::q_e * PC::q_e / (4.0 * PC::pi * PC::hbar * PC::c);
    out.inv_mu0 = out.epsilon0 * PC::c * PC::c;
    out.speed_of_light_defined = out.epsilon0 > 0.0;
    out.speed_of_light = out.speed_of_light_defined ? std::sqrt(out.inv_mu0 / out.epsilon0)
                                                    : std::numeric_limits<double>::quiet_NaN();
    return out;
}

// --- Magnetic moments and Landau levels -------------------------------------

/// q_e hbar c^2 / (2 eps_f) [J/T]; the Bohr magneton at eps_f = m_e c^2.
inline double relativistic_magnetic_moment(double fermion_energy_mev) {
    if (!(fermion_energy_mev > 0.0)) throw PreconditionError("fermion energy must be > 0");
    return PC::q_e * PC::hbar * PC::c * PC::c / (2.0 * fermion_energy_mev * PC::mev_to_joule);
}

/// Pair "distance" x = hbar/(eps_f/c) [m]
inline double dipole_distance(double fermion_energy_mev) {
    if (!(fermion_energy_mev > 0.0)) throw PreconditionError("fermion energy must be > 0");
    return PC::hbar_c_mev_m / fermion_energy_mev;
}

/// d = Q q_e x [C m]
inline double pair_electric_dipole(double charge_q, double distance_m) {
    return charge_q * PC::q_e * distance_m;
}

enum class LandauMode { Relativistic, FirstOrder, NonRelativistic };

struct LandauInput {
    double mass_energy_mev;
    double p_z_c_mev = 0.0;
    double field_t = 0.0;
    long long n = 0;
    double g_lande = 2.0;
    double spin = 0.5;  // +-1/2
};

/// Energy of a charged fermion in a magnetic field [MeV]. All three modes
/// include the rest energy, so NonRelativistic = mc^2 + p_z^2/2m + (q_e hbar B/2m)(2n+1-gs).
inline double landau_energy(const LandauInput& in, LandauMode mode) {
    if (!(in.mass_energy_mev > 0.0)) throw PreconditionError("landau_energy: mass must be > 0");
    if (!(in.field_t >= 0.0) || in.n < 0) throw PreconditionError("landau_energy: requires B >= 0 and n >= 0");
    if (std::abs(std::abs(in.spin) - 0.5) > 1e-12) throw PreconditionError("landau_energy: s must be +-1/2");

    const double level = 2.0 * static_cast<double>(in.n) + 1.0 - in.g_lande * in.spin;
    // q_e hbar c^2 B in MeV^2
    const double field_term = PC::q_e * PC::hbar * PC::c * PC::c * in.field_t /
                              (PC::mev_to_joule * PC::mev_to_joule);
    const double m = in.mass_energy_mev;
    const double pz = in.p_z_c_mev;

    switch (mode) {
        case LandauMode::Relativistic: {
            const double radicand = m * m + pz * pz + field_term * level;
            if (radicand < 0.0) throw NegativeRadicand("landau_energy: negative radicand");
            return std::sqrt(radicand);
        }
        case LandauMode::FirstOrder: {
            const double eps_f = std::hypot(m, pz);
            return eps_f + field_term / (2.0 * eps_f) * level;
        }
        case LandauMode::NonRelativistic:
            return m + pz * pz / (2.0 * m) + field_term / (2.0 * m) * level;
    }
    return 0.0;
}

} // namespace vpair::vacuum
