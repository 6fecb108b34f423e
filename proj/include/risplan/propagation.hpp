#pragma once

#include "risplan/scenario.hpp"

namespace risplan {

struct LinkGeometry {
    double d2d_m{0.0};
    double d3d_m{0.0};
    double tx_height_m{0.0};
    double rx_height_m{0.0};
    double frequency_ghz{0.0};
};

struct PathlossSample {
    double pl_db{0.0};
    bool los{false};
    LinkGeometry geometry;
};

// Free-space path loss; distances below 1 m are clamped to 1 m.
double fspl(double d_m, double f_ghz);

// Urban median path loss. Below 10 m 3D distance the model falls back to
// fspl. NLOS is floored at the LOS value. Sub-10 GHz carriers use
// macro-cell coefficients, higher bands street-canyon micro coefficients;
// the coefficient sets live in one table so alternates can be swapped.
double pl_urban(const LinkGeometry& geom, bool los, const Carrier& band);

struct Endpoint3 {
    Vec2 pos;
    double height_m;
};

// True iff no clutter pixel crossed by the 2D segment a->b reaches the
// 3D sight line (evaluated at the pixel center's along-segment position).
// Exact cell walk; corner ties count both adjacent cells as crossed.
bool los_check(const ClutterGrid& clutter, const Endpoint3& a, const Endpoint3& b);

// Direct site -> pixel path loss at UE height.
PathlossSample site_pathloss(const Scenario& s, const Site& site, int row, int col);

} // namespace risplan
