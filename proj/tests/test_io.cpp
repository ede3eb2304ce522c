#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "vpair/io.hpp"
#include "vpair/report.hpp"

using namespace vpair;
using nlohmann::json;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::size_t commas(const std::string& s) {
    std::size_t n = 0;
    bool quoted = false;
    for (char ch : s) {
        if (ch == '"') quoted = !quoted;
        if (ch == ',' && !quoted) ++n;
    }
    return n;
}

} // namespace

TEST_CASE("format_double round-trips", "[io]") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
    std::uniform_int_distribution<int> exponent(-300, 300);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::ldexp(mantissa(rng), exponent(rng));
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("csv escaping", "[io]") {
    CHECK(io::csv_escape("plain") == "plain");
    CHECK(io::csv_escape("a,b") == "\"a,b\"");
    CHECK(io::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("alpha breakdown round trip", "[io]") {
    const auto b = vacuum::inverse_alpha_total(default_registry(), vacuum::GlobalConstant{291.9});
    const auto back = io::alpha_breakdown_from_json(json::parse(io::to_json(b).dump()));
    CHECK(back.total_inverse_alpha == b.total_inverse_alpha);
    REQUIRE(back.per_species.size() == b.per_species.size());
    for (std::size_t i = 0; i < b.per_species.size(); ++i) {
        CHECK(back.per_species[i].species == b.per_species[i].species);
        CHECK(back.per_species[i].cutoff_mev == b.per_species[i].cutoff_mev);
        CHECK(back.per_species[i].inverse_alpha == b.per_species[i].inverse_alpha);
    }

    std::ostringstream csv;
    io::write_csv(csv, b);
    const auto rows = lines(csv.str());
    CHECK(rows.size() == b.per_species.size() + 2);
    for (const auto& r : rows) CHECK(commas(r) == 3);
}

TEST_CASE("flight result round trip", "[io]") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int i = 0; i < 20; ++i) {
        dispersion::FlightConfig c;
        c.lifetime = dispersion::LifetimeModel::custom(1e-18);
        c.length_m = 200.0 * PC::c * 1e-18;
        c.n_photons = 50 + i;
        c.seed = rng();
        c.delay_distribution = static_cast<dispersion::DelayDistribution>(pick(rng));
        c.interaction_process =
            pick(rng) ? dispersion::InteractionProcess::PoissonCount : dispersion::InteractionProcess::FixedCount;
        c.workers = 1;
        const auto r = dispersion::simulate_flight(c);
        const auto back = io::flight_result_from_json(json::parse(io::to_json(r).dump()));
        CHECK(back.mean_delay_s == r.mean_delay_s);
        CHECK(back.stddev_delay_s == r.stddev_delay_s);
        CHECK(back.n_photons == r.n_photons);
        CHECK(back.analytic_sigma_s == r.analytic_sigma_s);
        CHECK(back.expected_sigma_s == r.expected_sigma_s);
        CHECK(back.expected_interactions == r.expected_interactions);
        CHECK(back.warnings == r.warnings);
        CHECK(back.config_echo.seed == c.seed);
        CHECK(back.config_echo.delay_distribution == c.delay_distribution);
        CHECK(back.config_echo.interaction_process == c.interaction_process);
        CHECK(back.config_echo.lifetime.custom_tau_s == c.lifetime.custom_tau_s);
    }
}

TEST_CASE("lifetime model json", "[io]") {
    for (const auto& m : {dispersion::LifetimeModel::half_compton(), dispersion::LifetimeModel::urban_k(12.0),
                          dispersion::LifetimeModel::quasistationary(), dispersion::LifetimeModel::custom(2e-20)}) {
        const auto back = io::lifetime_model_from_json(io::to_json(m));
        CHECK(back.kind == m.kind);
        CHECK(dispersion::lifetime(back) == dispersion::lifetime(m));
    }
    CHECK_THROWS_AS(io::lifetime_model_from_json(json{{"name", "other"}}), ParseError);
}

TEST_CASE("spectral curve encodings", "[io]") {
    const statmech::ThermalState s(300.0);
    std::vector<statmech::SpectralSample> curve;
    for (int i = 1; i <= 5; ++i) curve.push_back(statmech::planck_sample(i * s.kt() / PC::c, s, i % 2 == 0));
    const auto j = io::to_json(curve);
    REQUIRE(j.size() == 5);
    CHECK(j[1]["includes_zero_point"] == true);
    CHECK(j[2]["energy_density_j_per_m3_per_momentum"].get<double>() == curve[2].value);

    std::ostringstream csv;
    io::write_csv(csv, curve);
    CHECK(lines(csv.str()).size() == 6);
}

TEST_CASE("report rows", "[io][report]") {
    report::ReportRow row = report::detail::make_row("x", 1.1, "1", report::Provenance::Quoted, 1.0, "note, with comma");
    CHECK(row.rel_diff.has_value());
    CHECK(*row.rel_diff == Catch::Approx(0.1));
    const auto no_ref = report::detail::make_row("y", 2.0, "1", report::Provenance::Derived);
    CHECK_FALSE(no_ref.rel_diff.has_value());

    const std::vector<report::ReportRow> rows{row, no_ref};
    const auto j = report::to_json(rows);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][1]["rel_diff"].is_null());
    CHECK(j["all_passed"] == true);

    std::ostringstream csv;
    report::write_csv(csv, rows);
    for (const auto& l : lines(csv.str())) CHECK(commas(l) == 10);
}
