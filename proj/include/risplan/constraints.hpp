#pragma once

#include <limits>

#include "risplan/scenario.hpp"

namespace risplan {

struct Range {
    double min{0.0};
    double max{0.0};
    bool contains(double v) const { return v >= min && v <= max; }
};

// Geometric and link-budget constraints for RIS dimensioning/placement,
// plus the hardware profile applied to every placed unit.
struct PlacementConstraints {
    Range d_bs_ris_m{100.0, 200.0};
    Range d_ris_ue_m{1.0, 300.0};
    Range incidence_deg{15.0, 45.0};
    double ris_height_m{5.0};
    double ris_gain_db{15.0};
    double ris_reflection_loss_db{0.5};
    RisMode mode{RisMode::Star};
    double beta_r{0.5};
    double target_coverage_prob{0.95};
    int max_ris{std::numeric_limits<int>::max()};

    // Band defaults: donor distance and incidence windows per band, heights
    // 5 m, gain/loss per the band's published hardware figures.
    static PlacementConstraints defaults_for(double center_freq_ghz);
};

} // namespace risplan
