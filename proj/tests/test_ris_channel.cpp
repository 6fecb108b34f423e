#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "risplan/ris_channel.hpp"

using namespace risplan;

namespace {

// Open 40x40 grid at 5 m. RIS at the pixel center (102.5, 102.5) facing
// east; donor 20 m due east (the published trial geometry), UE probe pixels
// 10 m east (reflect side) and 10 m west (transmit side).
struct MmWaveFixture {
    Scenario s;
    RisUnit ris;
    int front_row{0}, front_col{0};
    int back_row{0}, back_col{0};

    MmWaveFixture() {
        s.clutter.grid = {40, 40, 5.0, {0.0, 0.0}};
        s.clutter.height_m.assign(s.clutter.grid.n_pixels(), 0.0f);
        s.carriers.push_back({"n257", 28.0, 200.0});
        Site st;
        st.site_id = "S1";
        st.position = {122.5, 102.5};
        st.height_m = 5.0;
        st.tx_power_dbm = 18.0;
        st.antenna_gain_dbi = 0.0;
        st.carrier = "n257";
        s.sites.push_back(st);

        ris.ris_id = "R1";
        ris.position = {102.5, 102.5};
        ris.height_m = 5.0;
        ris.normal_azimuth_deg = 90.0; // faces east, toward the donor
        ris.mode = RisMode::ReflectOnly;
        ris.beta_r = 1.0;
        ris.gain_db = 26.0;
        ris.reflection_loss_db = 2.68;
        ris.donor_site = "S1";

        s.clutter.grid.pixel_of({112.5, 102.5}, front_row, front_col);
        s.clutter.grid.pixel_of({92.5, 102.5}, back_row, back_col);
    }

    // Donor at incidence 0 and dtx 20 m needs widened gates.
    PlacementConstraints relaxed() const {
        PlacementConstraints c = PlacementConstraints::defaults_for(28.0);
        c.d_bs_ris_m = {10.0, 75.0};
        c.incidence_deg = {0.0, 60.0};
        return c;
    }
};

Scenario sub6_scenario() {
    Scenario s;
    s.clutter.grid = {60, 60, 5.0, {0.0, 0.0}};
    s.clutter.height_m.assign(s.clutter.grid.n_pixels(), 0.0f);
    s.carriers.push_back({"n78", 3.5, 100.0});
    Site st;
    st.site_id = "S1";
    st.position = {252.5, 152.5};
    st.height_m = 25.0;
    st.tx_power_dbm = 18.0;
    st.antenna_gain_dbi = 0.0;
    st.carrier = "n78";
    s.sites.push_back(st);
    return s;
}

} // namespace

TEST_CASE("cascade: identity fixtures") {
    CHECK(pl_ris_cascade(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pl_ris_cascade(100.0, 80.0) == doctest::Approx(180.0).epsilon(1e-12));
}

TEST_CASE("cascade equals the dB sum over random pairs") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10000; ++i) {
        const double a = 40.0 + (rng() % 120000) / 1000.0;
        const double b = 40.0 + (rng() % 120000) / 1000.0;
        CHECK(std::abs(pl_ris_cascade(a, b) - (a + b)) <= 1e-9);
    }
}

TEST_CASE("corridor fixtures") {
    CHECK(pl_ris_corridor(1.0, 1.0) == doctest::Approx(63.22).epsilon(1e-12));
    CHECK(pl_ris_corridor(20.0, 10.0) == doctest::Approx(113.64).epsilon(1e-4));
    CHECK(pl_ris_corridor(100.0, 20.0) == doctest::Approx(136.20).epsilon(1e-4));
}

TEST_CASE("corridor is strictly increasing in each argument") {
    std::mt19937_64 rng(18);
    for (int i = 0; i < 300; ++i) {
        const double dtx = 1.0 + (rng() % 2000) / 10.0;
        const double drx = 1.0 + (rng() % 2000) / 10.0;
        CHECK(pl_ris_corridor(dtx + 1.0, drx) > pl_ris_corridor(dtx, drx));
        CHECK(pl_ris_corridor(dtx, drx + 1.0) > pl_ris_corridor(dtx, drx));
    }
}

TEST_CASE("incidence angle fixtures") {
    RisUnit ris;
    ris.position = {0.0, 0.0};
    ris.normal_azimuth_deg = 0.0; // north
    Site st;
    st.position = {0.0, 100.0}; // due north
    CHECK(incidence_angle(st, ris) == doctest::Approx(0.0).epsilon(1e-9));
    st.position = {100.0, 0.0}; // in the surface plane
    CHECK(incidence_angle(st, ris) == doctest::Approx(90.0).epsilon(1e-9));
    st.position = {0.0, -100.0}; // behind
    CHECK(incidence_angle(st, ris) == doctest::Approx(180.0).epsilon(1e-9));
    st.position = {0.0, 0.0};
    CHECK_THROWS_AS(incidence_angle(st, ris), std::invalid_argument);
}

TEST_CASE("feasibility: all conditions met in an open scene") {
    MmWaveFixture f;
    const RisFeasibility ok = check_feasibility(f.s, f.ris, f.front_row, f.front_col, f.relaxed());
    CHECK(ok.feasible);
    CHECK(ok.reasons.empty());
    CHECK(ris_feasible(f.s, f.ris, f.front_row, f.front_col, f.relaxed()));
}

TEST_CASE("feasibility: default planning gates reject the short trial geometry") {
    MmWaveFixture f;
    // Donor at 20 m / incidence 0: outside the 50-75 m and 10-60 deg windows.
    const PlacementConstraints c = PlacementConstraints::defaults_for(28.0);
    const RisFeasibility feas = check_feasibility(f.s, f.ris, f.front_row, f.front_col, c);
    CHECK_FALSE(feas.feasible);
    REQUIRE(feas.reasons.size() == 2);
    CHECK(feas.reasons[0] == InfeasibleReason::AngleOutOfRange);
    CHECK(feas.reasons[1] == InfeasibleReason::DistanceOutOfRange);
}

TEST_CASE("feasibility: pixel behind a reflect-only RIS") {
    MmWaveFixture f;
    const RisFeasibility feas = check_feasibility(f.s, f.ris, f.back_row, f.back_col, f.relaxed());
    CHECK_FALSE(feas.feasible);
    REQUIRE(feas.reasons.size() == 1);
    CHECK(feas.reasons[0] == InfeasibleReason::WrongSide);
    CHECK_FALSE(ris_feasible(f.s, f.ris, f.back_row, f.back_col, f.relaxed()));

    // A STAR unit serves both half-spaces; the side test never fails.
    RisUnit star = f.ris;
    star.mode = RisMode::Star;
    star.beta_r = 0.5;
    const RisFeasibility star_feas = check_feasibility(f.s, star, f.back_row, f.back_col, f.relaxed());
    CHECK(star_feas.feasible);
}

TEST_CASE("feasibility: blocked donor segment is reported") {
    MmWaveFixture f;
    // Wall between donor (122.5) and RIS (102.5).
    f.s.clutter.height_m[f.s.clutter.grid.index(f.front_row, f.front_col)] = 30.0f;
    const RisFeasibility feas = check_feasibility(f.s, f.ris, f.back_row, f.back_col, f.relaxed());
    CHECK_FALSE(feas.feasible);
    bool has_bs_los = false;
    for (auto r : feas.reasons)
        has_bs_los |= r == InfeasibleReason::NoLosBsRis;
    CHECK(has_bs_los);
}

TEST_CASE("ris_feasible matches check_feasibility on random pixels") {
    MmWaveFixture f;
    f.ris.mode = RisMode::Star;
    f.ris.beta_r = 0.5;
    std::mt19937_64 rng(23);
    for (int i = 0; i < 64; ++i)
        f.s.clutter.height_m[rng() % f.s.clutter.height_m.size()] = 8.0f + rng() % 30;
    const PlacementConstraints c = f.relaxed();
    for (int i = 0; i < 500; ++i) {
        const int row = static_cast<int>(rng() % 40);
        const int col = static_cast<int>(rng() % 40);
        CHECK(ris_feasible(f.s, f.ris, row, col, c) ==
              check_feasibility(f.s, f.ris, row, col, c).feasible);
    }
}

TEST_CASE("mmWave rx power composes the corridor budget") {
    MmWaveFixture f;
    // 18 dBm + 26 dB - 2.68 dB - corridor(20, drx), drx with the UE-height slant.
    const double p = ris_rx_power(f.s, f.ris, f.front_row, f.front_col);
    const double drx = std::sqrt(10.0 * 10.0 + 3.5 * 3.5);
    const double expect = 18.0 + 26.0 - 2.68 - pl_ris_corridor(20.0, drx);
    CHECK(p == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(-72.32).epsilon(0.01));
}

TEST_CASE("sub-6 rx power cascades the urban segments") {
    Scenario s = sub6_scenario();
    RisUnit ris;
    ris.ris_id = "R1";
    ris.position = {102.5, 152.5};
    ris.height_m = 5.0;
    ris.normal_azimuth_deg = 90.0;
    ris.mode = RisMode::ReflectOnly;
    ris.beta_r = 1.0;
    ris.gain_db = 15.0;
    ris.reflection_loss_db = 0.5;
    ris.donor_site = "S1";
    s.ris_units.push_back(ris);

    int row, col;
    s.clutter.grid.pixel_of({202.5, 152.5}, row, col); // 100 m east, reflect side
    const Vec2 px = s.clutter.grid.pixel_center(row, col);

    LinkGeometry br;
    br.d2d_m = distance(s.sites[0].position, ris.position);
    br.d3d_m = dist3d(s.sites[0].position, 25.0, ris.position, 5.0);
    br.tx_height_m = 25.0;
    br.rx_height_m = 5.0;
    br.frequency_ghz = 3.5;
    LinkGeometry ru;
    ru.d2d_m = distance(ris.position, px);
    ru.d3d_m = dist3d(ris.position, 5.0, px, 1.5);
    ru.tx_height_m = 5.0;
    ru.rx_height_m = 1.5;
    ru.frequency_ghz = 3.5;
    const double expect = 18.0 + 15.0 - 0.5 -
                          pl_ris_cascade(pl_urban(br, true, s.carriers[0]),
                                         pl_urban(ru, true, s.carriers[0]));
    CHECK(ris_rx_power(s, ris, row, col) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("rx power: beta split costs 3.01 dB on each side") {
    MmWaveFixture f;
    const double p_full = ris_rx_power(f.s, f.ris, f.front_row, f.front_col);

    RisUnit star = f.ris;
    star.mode = RisMode::Star;
    star.beta_r = 0.5;
    const double p_half = ris_rx_power(f.s, star, f.front_row, f.front_col);
    CHECK(p_full - p_half == doctest::Approx(3.0103).epsilon(1e-3));

    // Same split on the transmit side at its own (mirror) geometry.
    const double p_back = ris_rx_power(f.s, star, f.back_row, f.back_col);
    const double drx = std::sqrt(10.0 * 10.0 + 3.5 * 3.5);
    const double expect_back =
        18.0 + 26.0 + 10.0 * std::log10(0.5) - 2.68 - pl_ris_corridor(20.0, drx);
    CHECK(p_back == doctest::Approx(expect_back).epsilon(1e-12));
}

TEST_CASE("rx power: transmit-side query against reflect-only throws") {
    MmWaveFixture f;
    CHECK_THROWS_AS(ris_rx_power(f.s, f.ris, f.back_row, f.back_col), std::domain_error);
}

TEST_CASE("rx power: beta_r = 1 STAR is bit-identical to reflect-only on the reflect side") {
    MmWaveFixture f;
    RisUnit star = f.ris;
    star.mode = RisMode::Star;
    star.beta_r = 1.0;
    for (int col = 21; col < 40; ++col) {
        const double a = ris_rx_power(f.s, f.ris, 19, col);
        const double b = ris_rx_power(f.s, star, 19, col);
        CHECK(a == b);
    }
}

TEST_CASE("rx power is strictly decreasing in drx") {
    MmWaveFixture f;
    double prev = 1e9;
    for (int col = 21; col < 40; ++col) { // walking east, away from the RIS
        const double p = ris_rx_power(f.s, f.ris, 19, col);
        CHECK(p < prev);
        prev = p;
    }
}
