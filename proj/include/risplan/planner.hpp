#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risplan/coverage.hpp"

namespace risplan {

struct RisCandidate {
    int row{0};
    int col{0};
    Vec2 position;
    double normal_azimuth_deg{0.0};
    std::string donor_site;
    int last_score{0};
};

struct PlacementResult {
    std::vector<RisUnit> placed;
    std::vector<double> marginal_gain_m2; // newly-covered area per step
    double achieved_coverage_prob{0.0};
    double initial_coverage_prob{0.0};
};

struct PipelineResult {
    MapSet before_maps;
    CoverageReport before_report;
    DeadZoneSet before_zones;
    std::size_t n_candidates{0};
    PlacementResult placement;
    MapSet after_maps;
    CoverageReport after_report;
    DeadZoneSet after_zones;
    DeltaReport delta;
};

struct PipelineOptions {
    double dead_zone_min_area_m2{-1.0}; // < 0: four pixels' worth
    int jobs{1};
};

// Hexagonal-cell dimensioning: ceil(area / ((3*sqrt(3)/2) * r^2)).
int estimate_min_ris(double area_m2, double cell_radius_m);

// Facade-adjacent street pixels within d_ris_ue.max of a dead-zone pixel,
// one candidate per facade orientation, each with the nearest donor site
// passing the distance/incidence/LOS gates; candidates without a donor are
// dropped. Sorted by (pixel row-major, orientation).
std::vector<RisCandidate> generate_candidates(const Scenario& s, const DeadZoneSet& dz,
                                              const PlacementConstraints& c, const Carrier& band);

// Builds the RIS unit a candidate would become when placed.
RisUnit candidate_to_unit(const RisCandidate& cand, const PlacementConstraints& c,
                          const std::string& ris_id);

// Dead pixels the candidate would lift to >= cutoff, row-major sorted.
std::vector<std::size_t> candidate_cover_set(const Scenario& s, const RisCandidate& cand,
                                             const DeadZoneSet& dz, double cutoff_dbm,
                                             const PlacementConstraints& c);

int score_candidate(const Scenario& s, const RisCandidate& cand, const DeadZoneSet& dz,
                    double cutoff_dbm, const PlacementConstraints& c);

// Greedy max-coverage: re-scores every remaining candidate each step, takes
// the max (ties: lowest candidate index), until the coverage target, the
// budget, or a zero best score stops it. `before_rsrp` supplies the initial
// covered fraction. Deterministic for fixed inputs; candidate scoring may be
// parallelized without affecting the result.
PlacementResult greedy_place(const Scenario& s, const DeadZoneSet& dz,
                             const PlacementConstraints& c, const RasterMap& before_rsrp,
                             const std::vector<RisCandidate>& candidates, int jobs = 1);

PlacementResult greedy_place(const Scenario& s, const DeadZoneSet& dz,
                             const PlacementConstraints& c, const Carrier& band,
                             const RasterMap& before_rsrp, int jobs = 1);

// Full plan -> simulate -> detect -> place -> re-simulate -> compare flow.
PipelineResult run_pipeline(const Scenario& s, const Carrier& band,
                            const PlacementConstraints& c, const PipelineOptions& opts = {});

} // namespace risplan
