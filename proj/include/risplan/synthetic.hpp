#pragma once

#include <cstdint>

#include "risplan/scenario.hpp"

namespace risplan {

// Manhattan-grid city description. Blocks of `block_m` square are separated
// by streets of `street_m` (building height 0); the pattern starts with a
// street band at the grid origin. Per-block heights are drawn uniformly from
// the integer range [height_min_m, height_max_m]; a block drawn at 0 is an
// open plaza. Sites go on a uniform lattice, snapped to street pixels.
struct SyntheticSpec {
    int width_px{100};
    int height_px{100};
    double resolution_m{5.0};
    double block_m{50.0};
    double street_m{20.0};
    int height_min_m{10};
    int height_max_m{40};
    int n_sites{1};
    Carrier carrier{"n78", 3.5, 100.0};
    double site_height_m{25.0};
    double site_tx_power_dbm{18.0};
    double site_antenna_gain_dbi{0.0};
};

// Deterministic function of (seed, spec). Throws std::invalid_argument on an
// infeasible spec (nonpositive dimensions, no street pixels for the sites).
Scenario generate_synthetic(std::uint64_t seed, const SyntheticSpec& spec);

// The desk-scale reference configuration used by the pipeline examples:
// ~6.7 km^2 at 5 m/px, 8 sites at 3.5 GHz.
SyntheticSpec reference_spec_3p5ghz();

} // namespace risplan
