#pragma once

#include <string>
#include <vector>

#include "risplan/constraints.hpp"
#include "risplan/ris_channel.hpp"

namespace risplan {

struct ServerPath {
    std::string site_id;
    std::string ris_id; // empty for the direct path
    bool via_ris() const { return !ris_id.empty(); }
    std::string label() const { return via_ris() ? site_id + "|" + ris_id : site_id; }
};

struct RxEntry {
    ServerPath path;
    double power_dbm;
};

struct MapParams {
    PlacementConstraints ris_constraints; // service envelope for installed RIS
    double spectral_efficiency{0.75};     // Shannon attenuation factor
    double se_cap_bps_hz{7.8};
    int jobs{1};
};

struct MapSet {
    RasterMap best_server; // value = index into server_legend
    RasterMap rsrp;        // dBm
    RasterMap sinr;        // dB
    RasterMap throughput;  // bps
    std::vector<std::string> server_legend;
};

struct DeadZone {
    std::vector<std::size_t> pixels; // row-major indices, sorted
    double area_m2{0.0};
    double centroid_row{0.0};
    double centroid_col{0.0};
};

struct DeadZoneSet {
    std::vector<DeadZone> zones;
    double total_area_m2{0.0};
};

struct CoverageReport {
    Grid grid;
    ThresholdConfig thresholds;
    std::vector<double> rsrp_class_fractions; // one per class, sums to 1
    std::vector<double> sinr_class_fractions;
    double covered_fraction{0.0}; // RSRP >= dead-zone cutoff
    double mean_throughput_bps{0.0};
    double median_throughput_bps{0.0};
    std::vector<double> sinr_cdf_db;       // sample points, 1 dB steps
    std::vector<double> sinr_cdf_fraction; // P(SINR <= x)
};

struct DeltaReport {
    CoverageReport before;
    CoverageReport after;
    double before_dead_zone_m2{0.0};
    double after_dead_zone_m2{0.0};
    std::vector<double> rsrp_class_rel_change_pct;
    std::vector<double> sinr_class_rel_change_pct;
    double covered_fraction_rel_change_pct{0.0};
    double dead_zone_area_change_pct{0.0};
};

double noise_floor_dbm(double bandwidth_mhz, double noise_figure_db);

// All candidate paths reaching the pixel on the given band, strongest
// first (ties by site_id then ris_id). Zero-energy paths are omitted.
std::vector<RxEntry> compute_rx_power(const Scenario& s, const Carrier& band, int row, int col,
                                      const PlacementConstraints& ris_constraints);

// Full map set for one band. Interference at a pixel sums the direct-path
// powers of non-serving sites in site_id order. Throws if the band has no
// sites.
MapSet compute_maps(const Scenario& s, const Carrier& band, const MapParams& params);
MapSet compute_maps(const Scenario& s, const Carrier& band);

// 4-connected components of valid pixels below the cutoff; components
// smaller than min_area_m2 are dropped. Zones sorted by area descending,
// ties by centroid row-major.
DeadZoneSet detect_dead_zones(const RasterMap& rsrp, double cutoff_dbm, double min_area_m2);

CoverageReport coverage_stats(const MapSet& maps, const ThresholdConfig& thresholds);

// Relative changes per class ((after - before) / max(before, 1e-9), in %).
// Throws on grid or thresholds mismatch.
DeltaReport compare(const CoverageReport& before, const DeadZoneSet& before_zones,
                    const CoverageReport& after, const DeadZoneSet& after_zones);

} // namespace risplan
