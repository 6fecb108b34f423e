#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <json.hpp>

#include "risplan/scenario_io.hpp"
#include "risplan/synthetic.hpp"

using namespace risplan;

namespace {

const char* kMinimalDoc = R"({
  "grid": {"width_px": 10, "height_px": 10, "resolution_m": 10, "origin": [0, 0]},
  "clutter": {"inline": [0,0,0,0,0,0,0,0,0,0, 0,0,0,0,0,0,0,0,0,0, 0,0,0,0,0,0,0,0,0,0,
               0,0,0,0,0,0,0,0,0,0, 0,0,0,0,0,0,0,0,0,0, 0,0,0,0,0,0,0,0,0,0,
               0,0,0,0,0,0,0,0,0,0, 0,0,0,0,0,0,0,0,0,0, 0,0,0,0,0,0,0,0,0,0,
               0,0,0,0,0,0,0,0,0,0]},
  "carriers": [{"band_id": "n78", "center_freq_ghz": 3.5, "bandwidth_mhz": 100}],
  "sites": [{"site_id": "S1", "position": [50, 50], "height_m": 25, "azimuth_deg": 0,
             "tx_power_dbm": 18, "antenna_gain_dbi": 0, "carrier": "n78"}],
  "ris_units": [],
  "ue": {"height_m": 1.5, "noise_figure_db": 5},
  "thresholds": {"rsrp_class_bounds_dbm": [-80, -90, -100],
                 "sinr_class_bounds_db": [20, 13, 10],
                 "deadzone_rsrp_dbm": -100, "target_coverage_prob": 0.95}
})";

Scenario random_scenario(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SyntheticSpec spec;
    spec.width_px = 40 + static_cast<int>(rng() % 40);
    spec.height_px = 40 + static_cast<int>(rng() % 40);
    spec.resolution_m = 5.0;
    spec.block_m = 30.0 + static_cast<double>(rng() % 40);
    spec.street_m = 15.0 + static_cast<double>(rng() % 15);
    spec.height_min_m = static_cast<int>(rng() % 5);
    spec.height_max_m = spec.height_min_m + 10 + static_cast<int>(rng() % 30);
    spec.n_sites = 1 + static_cast<int>(rng() % 4);
    Scenario s = generate_synthetic(rng(), spec);

    if (rng() % 2) {
        RisUnit r;
        r.ris_id = "R01";
        r.position = s.sites[0].position;
        r.height_m = 5.0;
        r.normal_azimuth_deg = static_cast<double>(rng() % 360);
        r.mode = rng() % 2 ? RisMode::Star : RisMode::ReflectOnly;
        r.beta_r = r.mode == RisMode::ReflectOnly ? 1.0 : 0.25 + 0.5 * (rng() % 100) / 100.0;
        r.gain_db = 15.0;
        r.reflection_loss_db = 0.5;
        r.donor_site = s.sites[0].site_id;
        if (rng() % 2)
            r.hardware = RisHardwareProfile{2430, 1, 3.8, 10.5, 4.5, 160};
        s.ris_units.push_back(r);
    }
    return s;
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
    return save_scenario(a) == save_scenario(b);
}

} // namespace

TEST_CASE("minimal document loads") {
    const Scenario s = load_scenario(kMinimalDoc);
    CHECK(s.sites.size() == 1);
    CHECK(s.ris_units.empty());
    CHECK(s.clutter.grid.width_px == 10);
    CHECK(s.clutter.grid.area_m2() == doctest::Approx(10000.0));
}

TEST_CASE("missing donor site is a named validation error") {
    std::string doc = kMinimalDoc;
    const std::string needle = "\"ris_units\": []";
    doc.replace(doc.find(needle), needle.size(), R"("ris_units": [
      {"ris_id": "R1", "position": [30, 30], "height_m": 5, "normal_azimuth_deg": 0,
       "mode": "reflect-only", "beta_r": 1, "gain_db": 15, "reflection_loss_db": 0.5,
       "donor_site": "S99"}])");
    try {
        load_scenario(doc);
        FAIL("expected validation error");
    } catch (const ScenarioError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("R1") != std::string::npos);
        CHECK(msg.find("S99") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected") {
    std::string doc = kMinimalDoc;
    const std::string needle = "\"ue\": {\"height_m\": 1.5";
    doc.replace(doc.find(needle), needle.size(), "\"ue\": {\"bogus\": 1, \"height_m\": 1.5");
    CHECK_THROWS_AS(load_scenario(doc), ScenarioError);
}

TEST_CASE("malformed document is a parse error") {
    CHECK_THROWS_AS(load_scenario("{not json"), ScenarioError);
}

TEST_CASE("round trip: random scenarios reload bit-identically") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const Scenario s = random_scenario(seed);
        const std::string doc = save_scenario(s);
        const Scenario reloaded = load_scenario(doc);
        CHECK(save_scenario(reloaded) == doc);
    }
}

TEST_CASE("round trip: seed-42 synthetic is bit-identical") {
    const Scenario s = generate_synthetic(42, reference_spec_3p5ghz());
    const std::string doc = save_scenario(s);
    CHECK(save_scenario(load_scenario(doc)) == doc);
}

TEST_CASE("round trip preserves beta_r at full precision") {
    Scenario s = load_scenario(kMinimalDoc);
    const double betas[3] = {1.0, 0.123456789012345678, 1.0 / 3.0};
    for (int i = 0; i < 3; ++i) {
        RisUnit r;
        r.ris_id = "R" + std::to_string(i);
        r.position = {25.0, 25.0};
        r.height_m = 5.0;
        r.mode = betas[i] == 1.0 ? RisMode::ReflectOnly : RisMode::Star;
        r.beta_r = betas[i];
        r.gain_db = 15.0;
        r.donor_site = "S1";
        s.ris_units.push_back(r);
    }
    const Scenario reloaded = load_scenario(save_scenario(s));
    for (int i = 0; i < 3; ++i)
        CHECK(reloaded.ris_units[i].beta_r == betas[i]);
}

TEST_CASE("validate: clean scenario has no violations") {
    CHECK(validate(load_scenario(kMinimalDoc)).empty());
}

TEST_CASE("validate: beta_r = 0 flags exactly that RIS") {
    Scenario s = load_scenario(kMinimalDoc);
    RisUnit r;
    r.ris_id = "R1";
    r.position = {25.0, 25.0};
    r.height_m = 5.0;
    r.mode = RisMode::Star;
    r.beta_r = 0.0;
    r.donor_site = "S1";
    s.ris_units.push_back(r);
    const auto v = validate(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "ris_units[0].beta_r");
}

TEST_CASE("validate: site outside grid") {
    Scenario s = load_scenario(kMinimalDoc);
    s.sites[0].position = {-5.0, 0.0};
    const auto v = validate(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "sites[0].position");
    CHECK(v[0].message.find("outside") != std::string::npos);
}

TEST_CASE("generate_synthetic is deterministic") {
    SyntheticSpec spec;
    spec.width_px = 80;
    spec.height_px = 80;
    spec.n_sites = 3;
    const Scenario a = generate_synthetic(1, spec);
    const Scenario b = generate_synthetic(1, spec);
    CHECK(scenario_equal(a, b));
    const Scenario c = generate_synthetic(2, spec);
    CHECK_FALSE(scenario_equal(a, c));
}

TEST_CASE("street width covering the grid gives an all-open scenario") {
    SyntheticSpec spec;
    spec.width_px = 50;
    spec.height_px = 50;
    spec.resolution_m = 5.0;
    spec.street_m = 250.0;
    spec.block_m = 50.0;
    const Scenario s = generate_synthetic(3, spec);
    for (float h : s.clutter.height_m)
        CHECK(h == 0.0f);
}

TEST_CASE("building-pixel fraction tracks the block-area ratio") {
    SyntheticSpec spec;
    spec.width_px = 400;
    spec.height_px = 400;
    spec.resolution_m = 5.0;
    spec.block_m = 50.0;
    spec.street_m = 20.0;
    spec.height_min_m = 10;
    spec.height_max_m = 40;
    spec.n_sites = 4;
    const Scenario s = generate_synthetic(7, spec);
    std::size_t built = 0;
    for (float h : s.clutter.height_m)
        built += h > 0.0f;
    const double frac = static_cast<double>(built) / s.clutter.grid.n_pixels();
    const double expect = (50.0 / 70.0) * (50.0 / 70.0);
    CHECK(frac == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("generated sites stand on street pixels and validate cleanly") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        SyntheticSpec spec;
        spec.width_px = 120;
        spec.height_px = 100;
        spec.n_sites = 6;
        spec.height_min_m = 0;
        spec.height_max_m = 25;
        const Scenario s = generate_synthetic(seed, spec);
        CHECK(validate(s).empty());
        for (const Site& st : s.sites) {
            int r, c;
            s.clutter.grid.pixel_of(st.position, r, c);
            CHECK(s.clutter.is_street(r, c));
        }
    }
}

TEST_CASE("infeasible specs are rejected") {
    SyntheticSpec spec;
    spec.n_sites = 0;
    CHECK_THROWS_AS(generate_synthetic(1, spec), std::invalid_argument);
    SyntheticSpec all_building;
    all_building.width_px = 10;
    all_building.height_px = 10;
    all_building.resolution_m = 5.0;
    all_building.street_m = 0.0;
    all_building.block_m = 1000.0;
    all_building.height_min_m = 5;
    all_building.height_max_m = 5;
    all_building.n_sites = 1;
    CHECK_THROWS_AS(generate_synthetic(1, all_building), std::invalid_argument);
}

TEST_CASE("clutter PGM raster round-trips through a file reference") {
    const Scenario s = generate_synthetic(5, SyntheticSpec{});
    save_clutter_pgm(s.clutter, "clutter_test.pgm");
    const ClutterGrid back = load_clutter_pgm("clutter_test.pgm", s.clutter.grid);
    CHECK(back.height_m == s.clutter.height_m);

    std::string doc = save_scenario(s);
    // Swap the inline raster for the file reference.
    const Scenario via_file = [&] {
        auto j = nlohmann::json::parse(doc);
        j["clutter"] = {{"file", "clutter_test.pgm"}};
        return load_scenario(j.dump(), ".");
    }();
    CHECK(via_file.clutter.height_m == s.clutter.height_m);
}
