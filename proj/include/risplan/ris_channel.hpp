#pragma once

#include <string>
#include <vector>

#include "risplan/constraints.hpp"
#include "risplan/propagation.hpp"

namespace risplan {

struct RisLinkGeometry {
    double dtx_m{0.0}; // BS -> RIS slant distance
    double drx_m{0.0}; // RIS -> UE slant distance
    double incidence_deg{0.0};
    enum class Side { Reflect, Transmit } side{Side::Reflect};
};

enum class InfeasibleReason {
    AngleOutOfRange,
    NoLosBsRis,
    NoLosRisUe,
    DistanceOutOfRange,
    WrongSide,
};

const char* to_string(InfeasibleReason r);

struct RisFeasibility {
    bool feasible{false};
    std::vector<InfeasibleReason> reasons;
};

// Two-segment path loss as the product of the per-segment linear losses;
// algebraically the dB sum of the segments.
double pl_ris_cascade(double pl_br_db, double pl_ru_db);

// Fitted two-distance mmWave model for RIS-assisted links.
double pl_ris_corridor(double dtx_m, double drx_m);

// Horizontal-plane angle in [0, 180] between the RIS outward normal and the
// ray RIS -> site; > 90 means the site is behind the surface.
double incidence_angle(const Site& site, const RisUnit& ris);

RisLinkGeometry ris_link_geometry(const Scenario& s, const RisUnit& ris, int row, int col);

RisFeasibility check_feasibility(const Scenario& s, const RisUnit& ris, int row, int col,
                                 const PlacementConstraints& constraints);

// Same verdict as check_feasibility().feasible, but skips the raster LOS
// walks whenever a cheap geometric gate already fails.
bool ris_feasible(const Scenario& s, const RisUnit& ris, int row, int col,
                  const PlacementConstraints& constraints);

// Received power of the BS -> RIS -> UE path at the pixel. Sub-10 GHz
// carriers cascade the urban model over both segments; higher bands use the
// corridor model. STAR units split energy beta_r / (1 - beta_r) between the
// reflect and transmit half-spaces. Throws on a transmit-side query against
// a reflect-only unit.
double ris_rx_power(const Scenario& s, const RisUnit& ris, int row, int col);

} // namespace risplan
