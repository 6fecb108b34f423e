#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "risplan/propagation.hpp"
#include "risplan/scenario_io.hpp"
#include "risplan/synthetic.hpp"

using namespace risplan;

namespace {

const Carrier kBand35{"n78", 3.5, 100.0};
const Carrier kBand28{"n257", 28.0, 200.0};

ClutterGrid open_grid(int w, int h, double res) {
    ClutterGrid cg;
    cg.grid = {w, h, res, {0.0, 0.0}};
    cg.height_m.assign(cg.grid.n_pixels(), 0.0f);
    return cg;
}

// Independent reference: sample the segment at 0.1-pixel steps and compare
// each sample point's clutter height against the 3D line height there.
bool los_dense_oracle(const ClutterGrid& clutter, const Endpoint3& a, const Endpoint3& b) {
    const Grid& g = clutter.grid;
    const double len_px = distance(a.pos, b.pos) / g.resolution_m;
    const int steps = std::max(1, static_cast<int>(std::ceil(len_px / 0.1)));
    for (int k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) / steps;
        const Vec2 p = a.pos + (b.pos - a.pos) * t;
        if (!g.contains(p)) continue;
        int r, c;
        g.pixel_of(p, r, c);
        const float h = clutter.at(r, c);
        if (h <= 0.0f) continue;
        const double line_h = a.height_m + t * (b.height_m - a.height_m);
        if (static_cast<double>(h) >= line_h) return false;
    }
    return true;
}

} // namespace

TEST_CASE("fspl fixtures") {
    CHECK(fspl(1.0, 1.0) == doctest::Approx(32.45).epsilon(1e-12));
    CHECK(fspl(100.0, 3.5) == doctest::Approx(83.33).epsilon(1e-4));
    CHECK(fspl(10.0, 28.0) == doctest::Approx(81.39).epsilon(1e-4));
    // clamp below 1 m
    CHECK(fspl(0.2, 3.5) == fspl(1.0, 3.5));
}

TEST_CASE("fspl is strictly increasing above the clamp") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        const double d = 1.0 + (rng() % 10000) / 10.0;
        const double f = 0.5 + (rng() % 600) / 10.0;
        CHECK(fspl(d + 1.0, f) > fspl(d, f));
        CHECK(fspl(d, f + 0.5) > fspl(d, f));
    }
}

TEST_CASE("urban LOS model matches its documented form") {
    LinkGeometry geom{100.0, 100.0, 25.0, 1.5, 3.5};
    // 28.0 + 22*log10(100) + 20*log10(3.5)
    const double expect = 28.0 + 44.0 + 20.0 * std::log10(3.5);
    CHECK(pl_urban(geom, true, kBand35) == doctest::Approx(expect).epsilon(1e-12));

    LinkGeometry geom28{100.0, 100.0, 25.0, 1.5, 28.0};
    const double expect28 = 32.4 + 21.0 * 2.0 + 20.0 * std::log10(28.0);
    CHECK(pl_urban(geom28, true, kBand28) == doctest::Approx(expect28).epsilon(1e-12));
}

TEST_CASE("urban NLOS is never below LOS") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 500; ++i) {
        LinkGeometry geom;
        geom.d3d_m = 10.0 + (rng() % 50000) / 10.0;
        geom.d2d_m = geom.d3d_m;
        geom.tx_height_m = 25.0;
        geom.rx_height_m = 1.5 + (rng() % 5);
        const Carrier& band = rng() % 2 ? kBand35 : kBand28;
        geom.frequency_ghz = band.center_freq_ghz;
        const double los = pl_urban(geom, true, band);
        const double nlos = pl_urban(geom, false, band);
        CHECK(nlos >= los);
    }
    // At 100 m the NLOS formula dominates strictly.
    LinkGeometry geom{100.0, 100.0, 25.0, 1.5, 3.5};
    CHECK(pl_urban(geom, false, kBand35) > pl_urban(geom, true, kBand35));
}

TEST_CASE("below 10 m the model falls back to fspl") {
    LinkGeometry geom{5.0, 5.0, 5.0, 1.5, 3.5};
    CHECK(pl_urban(geom, true, kBand35) == fspl(5.0, 3.5));
    CHECK(pl_urban(geom, false, kBand35) == fspl(5.0, 3.5));
}

TEST_CASE("los_check: open grid always clear") {
    const ClutterGrid cg = open_grid(64, 64, 5.0);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Endpoint3 a{{(rng() % 3199) / 10.0, (rng() % 3199) / 10.0}, 1.0 + (rng() % 30)};
        const Endpoint3 b{{(rng() % 3199) / 10.0, (rng() % 3199) / 10.0}, 1.0 + (rng() % 30)};
        CHECK(los_check(cg, a, b));
    }
}

TEST_CASE("los_check: single tall pixel blocks the sight line") {
    ClutterGrid cg = open_grid(21, 21, 10.0);
    cg.height_m[cg.grid.index(10, 10)] = 50.0f; // midpoint of the segment below
    const Endpoint3 site{cg.grid.pixel_center(10, 2), 25.0};
    const Endpoint3 ue{cg.grid.pixel_center(10, 18), 1.5};
    CHECK_FALSE(los_check(cg, site, ue));
    // A low obstacle below the sight line does not block.
    cg.height_m[cg.grid.index(10, 10)] = 10.0f;
    CHECK(los_check(cg, site, ue));
}

TEST_CASE("los_check is symmetric") {
    std::mt19937_64 rng(12);
    SyntheticSpec spec;
    spec.width_px = 64;
    spec.height_px = 64;
    spec.resolution_m = 5.0;
    spec.height_min_m = 5;
    spec.height_max_m = 40;
    const Scenario s = generate_synthetic(21, spec);
    for (int i = 0; i < 300; ++i) {
        const Endpoint3 a{{(rng() % 3199) / 10.0, (rng() % 3199) / 10.0}, 1.5 + (rng() % 28)};
        const Endpoint3 b{{(rng() % 3199) / 10.0, (rng() % 3199) / 10.0}, 1.5 + (rng() % 28)};
        CHECK(los_check(s.clutter, a, b) == los_check(s.clutter, b, a));
    }
}

TEST_CASE("los_check agrees with the dense-sampling oracle") {
    std::mt19937_64 rng(13);
    std::size_t mismatches = 0, total = 0;
    for (std::uint64_t scene = 0; scene < 6; ++scene) {
        SyntheticSpec spec;
        spec.width_px = 64;
        spec.height_px = 64;
        spec.resolution_m = 5.0;
        spec.block_m = 30.0 + 10.0 * (scene % 3);
        spec.street_m = 15.0 + 5.0 * (scene % 2);
        spec.height_min_m = 26;
        spec.height_max_m = 60;
        const Scenario s = generate_synthetic(100 + scene, spec);
        for (int i = 0; i < 400; ++i) {
            const Endpoint3 a{{(rng() % 3199) / 10.0, (rng() % 3199) / 10.0},
                              1.5 + (rng() % 235) / 10.0};
            const Endpoint3 b{{(rng() % 3199) / 10.0, (rng() % 3199) / 10.0},
                              1.5 + (rng() % 235) / 10.0};
            ++total;
            if (los_check(s.clutter, a, b) != los_dense_oracle(s.clutter, a, b)) ++mismatches;
        }
    }
    CHECK(static_cast<double>(mismatches) / static_cast<double>(total) <= 0.001);
}

TEST_CASE("site_pathloss: degenerate distance uses the fspl fallback") {
    Scenario s;
    s.clutter = open_grid(10, 10, 10.0);
    s.carriers.push_back(kBand35);
    Site st;
    st.site_id = "S1";
    st.position = s.clutter.grid.pixel_center(5, 5);
    st.height_m = 5.0; // d3d = 3.5 m < 10 m
    st.carrier = "n78";
    s.sites.push_back(st);

    const PathlossSample sample = site_pathloss(s, st, 5, 5);
    CHECK(sample.geometry.d2d_m == 0.0);
    CHECK(sample.geometry.d3d_m == doctest::Approx(3.5));
    CHECK(sample.pl_db == fspl(3.5, 3.5));
}

TEST_CASE("site_pathloss: monotone along a ray on an open grid") {
    Scenario s;
    s.clutter = open_grid(64, 1, 10.0);
    s.carriers.push_back(kBand35);
    Site st;
    st.site_id = "S1";
    st.position = s.clutter.grid.pixel_center(0, 0);
    st.height_m = 25.0;
    st.carrier = "n78";
    s.sites.push_back(st);

    double prev = -1.0;
    for (int c = 0; c < 64; ++c) {
        const double pl = site_pathloss(s, st, 0, c).pl_db;
        CHECK(pl >= prev);
        prev = pl;
    }
}

TEST_CASE("site_pathloss: blocked pixel loses more than an open one at equal range") {
    Scenario s;
    s.clutter = open_grid(41, 41, 10.0);
    s.carriers.push_back(kBand35);
    Site st;
    st.site_id = "S1";
    st.position = s.clutter.grid.pixel_center(20, 20);
    st.height_m = 25.0;
    st.carrier = "n78";
    s.sites.push_back(st);
    // Wall between the site and the pixel to the east; west stays open.
    s.clutter.height_m[s.clutter.grid.index(20, 25)] = 60.0f;

    const PathlossSample blocked = site_pathloss(s, st, 20, 30);
    const PathlossSample open = site_pathloss(s, st, 20, 10);
    CHECK(blocked.geometry.d3d_m == open.geometry.d3d_m);
    CHECK_FALSE(blocked.los);
    CHECK(open.los);
    CHECK(blocked.pl_db > open.pl_db);
}

TEST_CASE("site_pathloss is pure") {
    const Scenario s = generate_synthetic(3, SyntheticSpec{});
    const PathlossSample a = site_pathloss(s, s.sites[0], 7, 9);
    const PathlossSample b = site_pathloss(s, s.sites[0], 7, 9);
    CHECK(a.pl_db == b.pl_db);
    CHECK(a.los == b.los);
}
