#pragma once

// Mode statistics of a quantised field: standing-wave mode counting in a
// box, mode density, oscillator levels with zero-point term, grand-canonical
// single-mode statistics (mu = 0) and the Planck spectral energy density.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "vpair/constants.hpp"
#include "vpair/errors.hpp"
#include "vpair/numerics/quadrature.hpp"
#include "vpair/numerics/roots.hpp"

namespace vpair::statmech {

/// Temperature together with beta = 1/(kT).
class ThermalState {
public:
    explicit ThermalState(double temperature_k) : temperature_(temperature_k) {
        if (!(temperature_k > 0.0) || !std::isfinite(temperature_k))
            throw PreconditionError("ThermalState: temperature must be > 0");
        beta_ = 1.0 / (PC::k_boltzmann * temperature_);
    }

    static ThermalState from_beta(double beta_per_joule) {
        if (!(beta_per_joule > 0.0)) throw PreconditionError("ThermalState: beta must be > 0");
        ThermalState s(1.0 / (PC::k_boltzmann * beta_per_joule));
        s.beta_ = beta_per_joule;
        return s;
    }

    double temperature() const { return temperature_; }
    /// 1/(kT) [1/J]
    double beta() const { return beta_; }
    /// kT [J]
    double kt() const { return 1.0 / beta_; }

private:
    double temperature_;
    double beta_;
};

struct ModeDensityPoint {
    double momentum;  // [kg m/s]
    double density;   // [modes / ((kg m/s) m^3)]
};

struct SpectralSample {
    double abscissa;  // momentum [kg m/s] or angular frequency [rad/s]
    double value;     // energy density per abscissa unit
    bool includes_zero_point;
};

/// sqrt((mc^2)^2 + (pc)^2), all in MeV.
inline double dispersion_energy(double mass_energy, double pc) {
    if (!(mass_energy >= 0.0) || !(pc >= 0.0))
        throw PreconditionError("dispersion_energy: arguments must be >= 0");
    return std::hypot(mass_energy, pc);
}

// --- Box modes --------------------------------------------------------------

enum class BoxBoundary {
    /// psi(0) = psi(L) = 0, l_i >= 0, p_i = h l_i / (2 L_i).
    HardWall,
    /// psi(0) = psi(L), l_i in Z, p_i = h l_i / L_i.
    Periodic,
};

/// Whether hard-wall triples with a zero component (but not all zero) count.
enum class AxisModes { Exclude, Include };

struct BoxModeQuery {
    std::array<double, 3> box_lengths{};  // [m]
    double energy_max = 0.0;              // [MeV]
    double mass_energy = 0.0;             // [MeV]
    BoxBoundary boundary = BoxBoundary::HardWall;
    AxisModes axis_modes = AxisModes::Exclude;
    std::uint64_t max_count = 100'000'000'000ULL;
};

/// 4 pi V p^3 / (3 h^3) for the query's maximum momentum.
inline double continuum_mode_count(const std::array<double, 3>& box_lengths, double energy_max,
                                   double mass_energy) {
    const double pc2 = energy_max * energy_max - mass_energy * mass_energy;
    const double pc = std::sqrt(std::max(pc2, 0.0));
    const double volume = box_lengths[0] * box_lengths[1] * box_lengths[2];
    const double pc_over_hc = pc / PC::h_c_mev_m;  // p/h [1/m]
    return 4.0 * PC::pi * volume * pc_over_hc * pc_over_hc * pc_over_hc / 3.0;
}

/// Exact number of lattice modes with energy <= energy_max (all-zero triple excluded).
inline std::uint64_t count_box_modes(const BoxModeQuery& q) {
    for (double len : q.box_lengths)
        if (!(len > 0.0)) throw PreconditionError("count_box_modes: box lengths must be > 0");
    if (!(q.mass_energy >= 0.0) || !(q.energy_max >= q.mass_energy))
        throw PreconditionError("count_box_modes: requires energy_max >= mass_energy >= 0");

    const double pc2 = q.energy_max * q.energy_max - q.mass_energy * q.mass_energy;
    const double pc_max = std::sqrt(pc2);
    const double estimate = continuum_mode_count(q.box_lengths, q.energy_max, q.mass_energy);
    if (estimate > static_cast<double>(q.max_count))
        throw OverflowGuard("count_box_modes: ~" + std::to_string(estimate) +
                            " modes exceeds max_count");

    // Semi-axes of the ellipsoid in l-space: l_i <= axis_i.
    const double wave = q.boundary == BoxBoundary::HardWall ? 2.0 : 1.0;
    std::array<double, 3> axis{};
    for (int i = 0; i < 3; ++i) axis[i] = wave * q.box_lengths[i] * pc_max / PC::h_c_mev_m;

    auto inside = [&](double lx, double ly, double lz) {
        const double x = lx / axis[0], y = ly / axis[1], z = lz / axis[2];
        return x * x + y * y + z * z <= 1.0;
    };
    // Largest l_z >= 0 inside the ellipsoid for given (lx, ly), or -1.
    auto max_lz = [&](std::int64_t lx, std::int64_t ly) -> std::int64_t {
        const double x = lx / axis[0], y = ly / axis[1];
        const double rem = 1.0 - x * x - y * y;
        if (rem < 0.0) return -1;
        auto lz = static_cast<std::int64_t>(std::floor(axis[2] * std::sqrt(rem)));
        while (inside(lx, ly, lz + 1)) ++lz;
        while (lz >= 0 && !inside(lx, ly, lz)) --lz;
        return lz;
    };

    const auto nx = static_cast<std::int64_t>(std::floor(axis[0])) + 1;
    const auto ny = static_cast<std::int64_t>(std::floor(axis[1])) + 1;
    std::uint64_t count = 0;

    if (q.boundary == BoxBoundary::HardWall) {
        const std::int64_t start = q.axis_modes == AxisModes::Include ? 0 : 1;
        for (std::int64_t lx = start; lx <= nx; ++lx)
            for (std::int64_t ly = start; ly <= ny; ++ly) {
                const std::int64_t lz = max_lz(lx, ly);
                if (lz >= start) count += static_cast<std::uint64_t>(lz - start + 1);
            }
        if (q.axis_modes == AxisModes::Include) count -= 1;  // drop (0,0,0)
    } else {
        for (std::int64_t lx = -nx; lx <= nx; ++lx)
            for (std::int64_t ly = -ny; ly <= ny; ++ly) {
                const std::int64_t lz = max_lz(lx < 0 ? -lx : lx, ly < 0 ? -ly : ly);
                if (lz >= 0) count += static_cast<std::uint64_t>(2 * lz + 1);
            }
        count -= 1;
    }
    if (count > q.max_count) throw OverflowGuard("count_box_modes: count exceeds max_count");
    return count;
}

// --- Densities and single-mode statistics -----------------------------------

/// dN/(V dp) = 4 pi p^2 / h^3.
inline double mode_density(double momentum) {
    if (!(momentum >= 0.0)) throw PreconditionError("mode_density: momentum must be >= 0");
    const double h3 = PC::h * PC::h * PC::h;
    return 4.0 * PC::pi * momentum * momentum / h3;
}

/// Density of virtual fluctuations. Numerically identical to mode_density:
/// the 1/2 of the zero-point level is compensated by the g = 2 degeneracy.
inline double vacuum_density(double momentum) { return mode_density(momentum); }

inline ModeDensityPoint mode_density_point(double momentum) {
    return {momentum, mode_density(momentum)};
}

/// hbar*omega*(n + 1/2) [J]
inline double mode_energy(double omega, long long n) {
    if (!(omega > 0.0) || n < 0) throw PreconditionError("mode_energy: requires omega > 0 and n >= 0");
    return PC::hbar * omega * (static_cast<double>(n) + 0.5);
}

namespace detail {
inline double reduced(double omega, const ThermalState& state) {
    if (!(omega > 0.0)) throw PreconditionError("omega must be > 0");
    return PC::hbar * omega * state.beta();
}
} // namespace detail

/// ln Z for one mode, Z = e^{-x/2} / (1 - e^{-x}), x = hbar*omega*beta.
inline double log_partition_function(double omega, const ThermalState& state) {
    const double x = detail::reduced(omega, state);
    return -0.5 * x - std::log(-std::expm1(-x));
}

inline double partition_function(double omega, const ThermalState& state) {
    const double x = detail::reduced(omega, state);
    return std::exp(-0.5 * x) / -std::expm1(-x);
}

/// p(n) = e^{-n x} (1 - e^{-x}); the zero-point offset cancels.
inline double state_probability(double omega, long long n, const ThermalState& state) {
    if (n < 0) throw PreconditionError("state_probability: n must be >= 0");
    const double x = detail::reduced(omega, state);
    return std::exp(-static_cast<double>(n) * x) * -std::expm1(-x);
}

/// Bose-Einstein occupation 1/(e^x - 1), mu = 0.
inline double mean_occupation(double omega, const ThermalState& state) {
    const double x = detail::reduced(omega, state);
    return 1.0 / std::expm1(x);
}

/// hbar*omega*(1/2 + <n>) [J]
inline double mean_energy(double omega, const ThermalState& state) {
    return PC::hbar * omega * (0.5 + mean_occupation(omega, state));
}

/// Energy density per unit momentum for photons (g = 2, epsilon = pc):
/// w(p) = 2 * 4 pi p^2/h^3 * pc * (1/2 + <n>); the 1/2 is dropped when
/// include_zero_point is false. Units: J / (m^3 * kg m/s).
inline double planck_energy_density(double momentum, const ThermalState& state,
                                    bool include_zero_point) {
    if (!(momentum >= 0.0)) throw PreconditionError("planck_energy_density: momentum must be >= 0");
    if (momentum == 0.0) return 0.0;
    const double energy = momentum * PC::c;
    const double occupation = 1.0 / std::expm1(energy * state.beta());
    const double level = (include_zero_point ? 0.5 : 0.0) + occupation;
    return 2.0 * mode_density(momentum) * energy * level;
}

inline SpectralSample planck_sample(double momentum, const ThermalState& state,
                                    bool include_zero_point) {
    return {momentum, planck_energy_density(momentum, state, include_zero_point), include_zero_point};
}

/// Stefan-Boltzmann energy density (pi^2/15) (kT)^4 / (hbar c)^3 [J/m^3].
inline double stefan_boltzmann_energy_density(const ThermalState& state) {
    const double kt = state.kt();
    const double hc = PC::hbar * PC::c;
    return PC::pi * PC::pi / 15.0 * kt * kt * kt * kt / (hc * hc * hc);
}

/// Numerical integral of the thermal part of w(p) over p in [0, inf).
inline double thermal_energy_density(const ThermalState& state,
                                     const numerics::QuadratureSpec& spec = {1e-11, 0.0, 40}) {
    const double p_scale = state.kt() / PC::c;
    return numerics::integrate_to_infinity(
        [&](double p) { return planck_energy_density(p, state, false); }, 0.0, spec, p_scale);
}

/// hbar*omega/(kT) at the maximum of the thermal spectrum, found by
/// maximising w(p) numerically (x = pc/kT, since epsilon = pc = hbar*omega).
inline double wien_peak_x(const ThermalState& state, double x_tol = 1e-10) {
    const double p_scale = state.kt() / PC::c;
    // Normalised so the objective is O(1) regardless of temperature.
    const double norm = planck_energy_density(p_scale, state, false);
    return numerics::maximize(
        [&](double x) { return planck_energy_density(x * p_scale, state, false) / norm; }, 0.5, 10.0,
        x_tol);
}

} // namespace vpair::statmech
