#pragma once

// JSON and CSV encodings of result records. Every quantity carries its unit
// in the key or an explicit "unit" field; SI unless noted.

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpair/dispersion.hpp"
#include "vpair/statmech.hpp"
#include "vpair/vacuum_response.hpp"

namespace vpair::io {

using nlohmann::json;

/// Shortest decimal that round-trips a double.
inline std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return out.str();
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

// --- AlphaBreakdown ----------------------------------------------------------

inline json to_json(const vacuum::AlphaBreakdown& b) {
    json rows = json::array();
    for (const auto& c : b.per_species)
        rows.push_back({{"species", c.species},
                        {"cutoff_mev", c.cutoff_mev},
                        {"inverse_alpha", c.inverse_alpha},
                        {"percent_of_total", 100.0 * c.inverse_alpha / b.total_inverse_alpha}});
    return {{"total_inverse_alpha", b.total_inverse_alpha}, {"per_species", rows}};
}

inline vacuum::AlphaBreakdown alpha_breakdown_from_json(const json& j) {
    vacuum::AlphaBreakdown b;
    b.total_inverse_alpha = j.at("total_inverse_alpha").get<double>();
    for (const auto& r : j.at("per_species"))
        b.per_species.push_back({r.at("species").get<std::string>(), r.at("cutoff_mev").get<double>(),
                                 r.at("inverse_alpha").get<double>()});
    return b;
}

inline void write_csv(std::ostream& out, const vacuum::AlphaBreakdown& b) {
    out << "species,cutoff_mev,inverse_alpha,percent_of_total\n";
    for (const auto& c : b.per_species)
        out << csv_escape(c.species) << ',' << format_double(c.cutoff_mev) << ','
            << format_double(c.inverse_alpha) << ','
            << format_double(100.0 * c.inverse_alpha / b.total_inverse_alpha) << '\n';
    out << "total,," << format_double(b.total_inverse_alpha) << ",100\n";
}

// --- Spectral curves ---------------------------------------------------------

inline json to_json(const std::vector<statmech::SpectralSample>& curve) {
    json rows = json::array();
    for (const auto& s : curve)
        rows.push_back({{"momentum_kg_m_per_s", s.abscissa},
                        {"energy_density_j_per_m3_per_momentum", s.value},
                        {"includes_zero_point", s.includes_zero_point}});
    return rows;
}

inline void write_csv(std::ostream& out, const std::vector<statmech::SpectralSample>& curve) {
    out << "momentum_kg_m_per_s,energy_density_j_per_m3_per_momentum,includes_zero_point\n";
    for (const auto& s : curve)
        out << format_double(s.abscissa) << ',' << format_double(s.value) << ','
            << (s.includes_zero_point ? "true" : "false") << '\n';
}

// --- Dispersion records --------------------------------------------------------

inline std::string to_string(dispersion::DelayDistribution d) {
    switch (d) {
        case dispersion::DelayDistribution::FixedTau: return "fixed";
        case dispersion::DelayDistribution::ExponentialTau: return "exp";
        case dispersion::DelayDistribution::UniformFraction: return "uniform";
    }
    return "unknown";
}

inline std::string to_string(dispersion::InteractionProcess p) {
    return p == dispersion::InteractionProcess::PoissonCount ? "poisson" : "fixed";
}

inline json to_json(const dispersion::LifetimeModel& m) {
    json j = {{"name", dispersion::to_string(m.kind)}, {"tau_s", dispersion::lifetime(m)}};
    if (m.kind == dispersion::LifetimeKind::UrbanK) j["k_factor"] = m.k_factor;
    return j;
}

inline dispersion::LifetimeModel lifetime_model_from_json(const json& j) {
    const auto kind = dispersion::parse_lifetime_kind(j.at("name").get<std::string>());
    if (!kind) throw ParseError("unknown lifetime model");
    dispersion::LifetimeModel m;
    m.kind = *kind;
    if (j.contains("k_factor")) m.k_factor = j["k_factor"].get<double>();
    if (m.kind == dispersion::LifetimeKind::Custom) m.custom_tau_s = j.at("tau_s").get<double>();
    return m;
}

inline json to_json(const dispersion::FlightConfig& c) {
    return {{"length_m", c.length_m},
            {"lifetime", to_json(c.lifetime)},
            {"n_photons", c.n_photons},
            {"seed", c.seed},
            {"delay_distribution", to_string(c.delay_distribution)},
            {"interaction_process", to_string(c.interaction_process)}};
}

inline dispersion::FlightConfig flight_config_from_json(const json& j) {
    dispersion::FlightConfig c;
    c.length_m = j.at("length_m").get<double>();
    c.lifetime = lifetime_model_from_json(j.at("lifetime"));
    c.n_photons = j.at("n_photons").get<std::int64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    const auto delay = j.at("delay_distribution").get<std::string>();
    if (delay == "fixed") c.delay_distribution = dispersion::DelayDistribution::FixedTau;
    else if (delay == "exp") c.delay_distribution = dispersion::DelayDistribution::ExponentialTau;
    else if (delay == "uniform") c.delay_distribution = dispersion::DelayDistribution::UniformFraction;
    else throw ParseError("unknown delay distribution '" + delay + "'");
    c.interaction_process = j.at("interaction_process").get<std::string>() == "fixed"
                                ? dispersion::InteractionProcess::FixedCount
                                : dispersion::InteractionProcess::PoissonCount;
    return c;
}

inline json to_json(const dispersion::PhotonFlightResult& r) {
    json warnings = r.warnings;
    return {{"mean_delay_s", r.mean_delay_s},
            {"stddev_delay_s", r.stddev_delay_s},
            {"stddev_standard_error_s", r.stddev_standard_error()},
            {"n_photons", r.n_photons},
            {"analytic_sigma_s", r.analytic_sigma_s},
            {"expected_sigma_s", r.expected_sigma_s},
            {"expected_interactions", r.expected_interactions},
            {"per_interaction_path", r.used_per_interaction_path},
            {"warnings", warnings},
            {"config", to_json(r.config_echo)}};
}

inline dispersion::PhotonFlightResult flight_result_from_json(const json& j) {
    dispersion::PhotonFlightResult r;
    r.mean_delay_s = j.at("mean_delay_s").get<double>();
    r.stddev_delay_s = j.at("stddev_delay_s").get<double>();
    r.n_photons = j.at("n_photons").get<std::int64_t>();
    r.analytic_sigma_s = j.at("analytic_sigma_s").get<double>();
    r.expected_sigma_s = j.at("expected_sigma_s").get<double>();
    r.expected_interactions = j.at("expected_interactions").get<double>();
    r.used_per_interaction_path = j.at("per_interaction_path").get<bool>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.config_echo = flight_config_from_json(j.at("config"));
    return r;
}

inline json to_json(const dispersion::LimitComparison& c) {
    json j = {{"model", dispersion::to_string(c.model)},
              {"model_sigma_s_per_sqrt_m", c.sigma_per_sqrt_m},
              {"model_sigma_fs_per_sqrt_m", c.sigma_per_sqrt_m / units::femtosecond},
              {"limit_band_fs_per_sqrt_m", {c.band_lo / units::femtosecond, c.band_hi / units::femtosecond}},
              {"verdict", dispersion::to_string(c.band_verdict)}};
    j["stated_conclusion"] = c.stated_conclusion ? json(dispersion::to_string(*c.stated_conclusion)) : json(nullptr);
    return j;
}

} // namespace vpair::io
