#include <catch_amalgamated.hpp>

#include <random>

#include "vpair/species.hpp"

using namespace vpair;
using Catch::Approx;

TEST_CASE("default registry contents", "[species]") {
    const auto reg = default_registry();
    REQUIRE(reg.size() == 10);
    for (const char* name : {"e", "mu", "tau", "u", "d", "s", "c", "b", "t", "W"}) CHECK(reg.contains(name));

    CHECK(reg.at("u").mass_mev == 1.5);
    CHECK(reg.at("e").charge_q == -1.0);
    CHECK(reg.at("e").color_factor == 1);
    CHECK(reg.at("W").spin_degeneracy == 3);
    for (const char* q : {"u", "d", "s", "c", "b", "t"}) {
        CHECK(reg.at(q).color_factor == 3);
        CHECK(reg.at(q).spin_degeneracy == 2);
    }
}

TEST_CASE("weighted degeneracy sum", "[species]") {
    const auto reg = default_registry();
    CHECK(weighted_degeneracy_sum(reg) == 9.5);
    CHECK(weighted_degeneracy_sum(reg.subset({"e"})) == 1.0);
    CHECK(weighted_degeneracy_sum(reg.subset({"u"})) == Approx(4.0 / 3.0).epsilon(1e-15));

    SECTION("group decomposition") {
        CHECK(weighted_degeneracy_sum(reg.subset({"e", "mu", "tau"})) == 3.0);
        CHECK(weighted_degeneracy_sum(reg.subset({"d", "s", "b"})) == 1.0);
        CHECK(weighted_degeneracy_sum(reg.subset({"u", "c", "t"})) == 4.0);
        CHECK(weighted_degeneracy_sum(reg.subset({"W"})) == 1.5);
    }

    SECTION("empty registry") {
        CHECK_THROWS_AS(weighted_degeneracy_sum(SpeciesRegistry{}), EmptyRegistry);
    }

    SECTION("charge scale enters squared") {
        auto e = reg.at("e");
        e.charge_scale = 2.0;
        CHECK(weighted_degeneracy_sum(SpeciesRegistry({e})) == 4.0);
    }
}

TEST_CASE("weighted sum is additive over disjoint sub-registries", "[species][property]") {
    const auto reg = default_registry();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> left, right;
        for (const auto& s : reg) (rng() & 1 ? left : right).push_back(s.name);
        if (left.empty() || right.empty()) continue;
        const double sum = weighted_degeneracy_sum(reg.subset(left)) + weighted_degeneracy_sum(reg.subset(right));
        CHECK(sum == Approx(9.5).epsilon(1e-14));
    }
}

TEST_CASE("registry validation", "[species]") {
    ParticleSpecies good{"x", 1.0, 2.0 / 3.0, 3, 2};
    CHECK_NOTHROW(SpeciesRegistry({good}));

    auto bad = good;
    bad.spin_degeneracy = 5;
    CHECK_THROWS_AS(SpeciesRegistry({bad}), ValidationError);
    bad = good;
    bad.color_factor = 2;
    CHECK_THROWS_AS(SpeciesRegistry({bad}), ValidationError);
    bad = good;
    bad.charge_q = 0.5;
    CHECK_THROWS_AS(SpeciesRegistry({bad}), ValidationError);
    bad = good;
    bad.mass_mev = 0.0;
    CHECK_THROWS_AS(SpeciesRegistry({bad}), ValidationError);
    CHECK_THROWS_AS(SpeciesRegistry({good, good}), ValidationError);
}

TEST_CASE("species file loading", "[species][io]") {
    SECTION("shipped default file equals the built-in table") {
        CHECK(load_registry(std::string(VPAIR_DATA_DIR) + "/species_default.json") == default_registry());
    }

    SECTION("serialised registry parses back identically") {
        const auto text = to_json(default_registry()).dump();
        CHECK(parse_registry(text) == default_registry());
    }

    SECTION("duplicate name") {
        const char* text = R"({"species": [
            {"name": "e", "mass_mev": 0.511, "charge_q": -1, "color_factor": 1, "spin_degeneracy": 2},
            {"name": "e", "mass_mev": 0.511, "charge_q": -1, "color_factor": 1, "spin_degeneracy": 2}]})";
        CHECK_THROWS_AS(parse_registry(text), ValidationError);
    }

    SECTION("out-of-range spin degeneracy") {
        const char* text = R"({"species": [
            {"name": "e", "mass_mev": 0.511, "charge_q": -1, "color_factor": 1, "spin_degeneracy": 5}]})";
        CHECK_THROWS_AS(parse_registry(text), ValidationError);
    }

    SECTION("malformed input") {
        CHECK_THROWS_AS(parse_registry("{not json"), ParseError);
        CHECK_THROWS_AS(parse_registry(R"({"species": 3})"), ParseError);
        CHECK_THROWS_AS(parse_registry(R"({"species": [{"name": "e"}]})"), ParseError);
        CHECK_THROWS_AS(parse_registry(R"({"species": [{"name": "e", "mass_mev": 0.5, "charge_q": -1,
            "color_factor": 1, "spin_degeneracy": 2, "colour": 1}]})"),
                        ParseError);
        CHECK_THROWS_AS(load_registry("/nonexistent/species.json"), ParseError);
    }

    SECTION("decimal charges snap to thirds") {
        const auto reg = parse_registry(R"({"species": [
            {"name": "d", "mass_mev": 3.0, "charge_q": -0.333333, "color_factor": 3, "spin_degeneracy": 2}]})");
        CHECK(reg.at("d").charge_q == -1.0 / 3.0);
    }
}
