#pragma once

// Pass/fail bands for the reproduction report. One table, versioned; the
// report and the acceptance suite both read it.

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vpair::tolerances {

inline constexpr int table_version = 1;

struct Band {
    std::string_view id;
    int criterion;
    double lo;
    double hi;

    constexpr bool contains(double v) const { return v >= lo && v <= hi; }
};

inline constexpr std::array<Band, 22> table = {{
    {"degeneracy_sum", 1, 9.5, 9.5},
    {"global_cutoff_mev", 2, 290.0, 294.0},
    {"ranking_e_then_u", 2, 1.0, 1.0},
    {"other_species_max_fraction", 2, 0.0, 0.02},
    {"electron_only_cutoff_over_me", 3, 862.5, 862.7},
    {"inverse_alpha_at_861_me", 3, 136.7, 136.9},
    {"mass_factor_a", 4, 6.43, 6.53},
    {"pair_volume_over_compton3", 4, 0.213, 0.223},
    {"quadrature_closed_form_max_rel_diff", 5, 0.0, 1e-8},
    {"stefan_boltzmann_max_rel_err", 6, 0.0, 1e-6},
    {"wien_peak_x", 6, 2.820, 2.822},
    {"box_mode_max_rel_dev", 7, 0.0, 0.02},
    {"mean_energy_fd_max_rel_diff", 8, 0.0, 1e-6},
    {"probability_sum_max_abs_dev", 8, 0.0, 1e-12},
    {"sigma_half_compton_fs", 9, 1.415, 1.515},
    {"sigma_urban_k_fs", 9, 0.249, 0.269},
    {"sigma_quasistationary_ns", 9, 0.435, 0.475},
    {"mc_max_abs_z", 10, 0.0, 3.0},
    {"mc_scaling_exponent", 10, 0.48, 0.52},
    {"sensitivity_fs", 11, 0.00274, 0.00294},
    {"broadened_fwhm_as", 12, 42.0, 43.0},
    {"quasistationary_excluded", 13, 1.0, 1.0},
}};

constexpr const Band& band(std::string_view id) {
    for (const auto& b : table)
        if (b.id == id) return b;
    throw std::out_of_range("no tolerance band");
}

} // namespace vpair::tolerances
