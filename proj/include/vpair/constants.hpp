#pragma once

// Physical constants, SI 2019 exact values where defined.

#include <numbers>

namespace vpair {

struct PhysicalConstants {
    static constexpr double pi = std::numbers::pi;

    /// Planck constant [J s]
    static constexpr double h = 6.62607015e-34;
    /// Reduced Planck constant [J s]
    static constexpr double hbar = h / (2.0 * pi);
    /// Speed of light [m/s]
    static constexpr double c = 299792458.0;
    /// Boltzmann constant [J/K]
    static constexpr double k_boltzmann = 1.380649e-23;
    /// Elementary charge [C]
    static constexpr double q_e = 1.602176634e-19;

    /// 1 MeV in joules.
    static constexpr double mev_to_joule = q_e * 1.0e6;
    /// Reduced Planck constant [MeV s]
    static constexpr double hbar_mev_s = hbar / mev_to_joule;
    /// hbar*c [MeV m]
    static constexpr double hbar_c_mev_m = hbar * c / mev_to_joule;
    /// h*c [MeV m]
    static constexpr double h_c_mev_m = h * c / mev_to_joule;

    /// Low-energy (Thomson limit) fine-structure constant target.
    static constexpr double inverse_alpha_target = 137.035999;
    static constexpr double alpha_target = 1.0 / inverse_alpha_target;

    /// Electron rest energy [MeV]
    static constexpr double electron_mass_energy = 0.51099895000;

    static constexpr double hbar_ev_s() { return hbar / q_e; }
    static constexpr double mass_kg(double mass_energy_mev) {
        return mass_energy_mev * mev_to_joule / (c * c);
    }
    static constexpr double bohr_magneton() {
        return q_e * hbar / (2.0 * mass_kg(electron_mass_energy));
    }
};

using PC = PhysicalConstants;

namespace units {
inline constexpr double femtosecond = 1.0e-15;
inline constexpr double attosecond = 1.0e-18;
inline constexpr double nanosecond = 1.0e-9;
} // namespace units

} // namespace vpair
