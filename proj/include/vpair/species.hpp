#pragma once

// Charged-particle registry: the species that contribute virtual pairs to
// the vacuum permittivity sum.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vpair/errors.hpp"

namespace vpair {

struct ParticleSpecies {
    std::string name;
    /// Rest energy mc^2 [MeV]
    double mass_mev = 0.0;
    /// Charge in units of q_e (Q_i)
    double charge_q = 0.0;
    /// Colour factor c_i
    int color_factor = 1;
    /// Spin degeneracy g_i (2 for fermions, 3 for W pairs)
    int spin_degeneracy = 2;
    /// Optional multiplier on the charge, e.g. for an unscreened-charge study.
    double charge_scale = 1.0;

    /// 18 * Q_i^2 c_i g_i / 2 with Q in thirds of q_e; an integer for
    /// unscaled charges, so sums over species are exact.
    double weight_numerator() const {
        const double thirds = std::round(3.0 * charge_q);
        return thirds * thirds * color_factor * spin_degeneracy * charge_scale * charge_scale;
    }

    /// Q_i^2 c_i g_i / 2, including the charge scale.
    double weight() const { return weight_numerator() / 18.0; }

    bool operator==(const ParticleSpecies&) const = default;
};

namespace detail {

inline bool near(double a, double b) { return std::abs(a - b) <= 1e-6; }

/// Snaps a decimal charge to the exact rational it represents.
inline double snap_charge(double q) {
    for (const double allowed : {1.0, 2.0 / 3.0, 1.0 / 3.0}) {
        if (near(q, allowed)) return allowed;
        if (near(q, -allowed)) return -allowed;
    }
    return q;
}

} // namespace detail

/// Throws ValidationError if the species breaks a field invariant.
inline void validate(const ParticleSpecies& s) {
    auto fail = [&](std::string_view what) {
        throw ValidationError("species '" + s.name + "': " + std::string(what));
    };
    if (s.name.empty()) fail("empty name");
    if (!(s.mass_mev > 0.0) || !std::isfinite(s.mass_mev)) fail("mass_mev must be > 0");
    const double q = std::abs(s.charge_q);
    if (!(detail::near(q, 1.0) || detail::near(q, 2.0 / 3.0) || detail::near(q, 1.0 / 3.0)))
        fail("charge_q must be one of +-1, +-2/3, +-1/3");
    if (s.color_factor != 1 && s.color_factor != 3) fail("color_factor must be 1 or 3");
    if (s.spin_degeneracy != 2 && s.spin_degeneracy != 3) fail("spin_degeneracy must be 2 or 3");
    if (!(s.charge_scale > 0.0) || !std::isfinite(s.charge_scale)) fail("charge_scale must be > 0");
}

/// Ordered, name-unique collection of species. Immutable once built.
class SpeciesRegistry {
public:
    SpeciesRegistry() = default;

    explicit SpeciesRegistry(std::vector<ParticleSpecies> species) : species_(std::move(species)) {
        for (auto& s : species_) {
            s.charge_q = detail::snap_charge(s.charge_q);
            validate(s);
        }
        for (std::size_t i = 0; i < species_.size(); ++i)
            for (std::size_t j = i + 1; j < species_.size(); ++j)
                if (species_[i].name == species_[j].name)
                    throw ValidationError("duplicate species name '" + species_[i].name + "'");
    }

    const std::vector<ParticleSpecies>& species() const { return species_; }
    std::size_t size() const { return species_.size(); }
    bool empty() const { return species_.empty(); }
    auto begin() const { return species_.begin(); }
    auto end() const { return species_.end(); }

    const ParticleSpecies& at(std::string_view name) const {
        auto it = std::find_if(species_.begin(), species_.end(),
                               [&](const ParticleSpecies& s) { return s.name == name; });
        if (it == species_.end()) throw ValidationError("unknown species '" + std::string(name) + "'");
        return *it;
    }

    bool contains(std::string_view name) const {
        return std::any_of(species_.begin(), species_.end(),
                           [&](const ParticleSpecies& s) { return s.name == name; });
    }

    /// Sub-registry holding only the named species, in registry order.
    SpeciesRegistry subset(const std::vector<std::string>& names) const {
        std::vector<ParticleSpecies> out;
        for (const auto& s : species_)
            if (std::find(names.begin(), names.end(), s.name) != names.end()) out.push_back(s);
        return SpeciesRegistry(std::move(out));
    }

    bool operator==(const SpeciesRegistry&) const = default;

private:
    std::vector<ParticleSpecies> species_;
};

/// The ten charged species of the Standard Model that enter the 1/alpha sum.
///
/// Masses are PDG values except u and d, which use the light-quark values
/// from the older PDG ranges (u = 1.5 MeV, d = 3.0 MeV).
inline SpeciesRegistry default_registry() {
    return SpeciesRegistry({
        {"e", 0.51099895000, -1.0, 1, 2},
        {"mu", 105.6583755, -1.0, 1, 2},
        {"tau", 1776.86, -1.0, 1, 2},
        {"u", 1.5, 2.0 / 3.0, 3, 2},
        {"d", 3.0, -1.0 / 3.0, 3, 2},
        {"s", 93.4, -1.0 / 3.0, 3, 2},
        {"c", 1270.0, 2.0 / 3.0, 3, 2},
        {"b", 4180.0, -1.0 / 3.0, 3, 2},
        {"t", 172690.0, 2.0 / 3.0, 3, 2},
        {"W", 80377.0, 1.0, 1, 3},
    });
}

/// Sum over species of Q_i^2 c_i g_i / 2.
inline double weighted_degeneracy_sum(const SpeciesRegistry& reg) {
    if (reg.empty()) throw EmptyRegistry();
    double numerator = 0.0;
    for (const auto& s : reg) numerator += s.weight_numerator();
    return numerator / 18.0;
}

// ---------------------------------------------------------------------------
// Species file (JSON):
//
//   {
//     "format": "vpair-species",
//     "version": 1,
//     "species": [
//       {"name": "e", "mass_mev": 0.51099895, "charge_q": -1,
//        "color_factor": 1, "spin_degeneracy": 2},
//       ...
//     ]
//   }
//
// "charge_scale" is optional (default 1). Unknown keys are rejected.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const ParticleSpecies& s) {
    nlohmann::json j = {{"name", s.name},
                        {"mass_mev", s.mass_mev},
                        {"charge_q", s.charge_q},
                        {"color_factor", s.color_factor},
                        {"spin_degeneracy", s.spin_degeneracy}};
    if (s.charge_scale != 1.0) j["charge_scale"] = s.charge_scale;
    return j;
}

inline nlohmann::json to_json(const SpeciesRegistry& reg) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : reg) arr.push_back(to_json(s));
    return {{"format", "vpair-species"}, {"version", 1}, {"species", arr}};
}

inline SpeciesRegistry parse_registry(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("species file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("species") || !doc["species"].is_array())
        throw ParseError("species file: expected an object with a \"species\" array");
    if (doc.contains("format") && doc["format"] != "vpair-species")
        throw ParseError("species file: unexpected format tag");

    static constexpr std::array<std::string_view, 6> known = {
        "name", "mass_mev", "charge_q", "color_factor", "spin_degeneracy", "charge_scale"};

    std::vector<ParticleSpecies> out;
    std::size_t index = 0;
    for (const auto& rec : doc["species"]) {
        const std::string where = "species record " + std::to_string(index++);
        if (!rec.is_object()) throw ParseError(where + ": not an object");
        for (const auto& [key, _] : rec.items())
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw ParseError(where + ": unknown field '" + key + "'");
        try {
            ParticleSpecies s;
            s.name = rec.at("name").get<std::string>();
            s.mass_mev = rec.at("mass_mev").get<double>();
            s.charge_q = rec.at("charge_q").get<double>();
            s.color_factor = rec.at("color_factor").get<int>();
            s.spin_degeneracy = rec.at("spin_degeneracy").get<int>();
            s.charge_scale = rec.value("charge_scale", 1.0);
            out.push_back(std::move(s));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    return SpeciesRegistry(std::move(out));
}

inline SpeciesRegistry load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open species file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_registry(buf.str());
}

} // namespace vpair
