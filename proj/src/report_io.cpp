#include "risplan/report_io.hpp"

#include <fstream>
#include <stdexcept>

namespace risplan {

using nlohmann::json;

json report_to_json(const CoverageReport& rep) {
    json j;
    j["grid"] = {{"width_px", rep.grid.width_px},
                 {"height_px", rep.grid.height_px},
                 {"resolution_m", rep.grid.resolution_m},
                 {"origin", {rep.grid.origin.x, rep.grid.origin.y}}};
    j["thresholds"] = {{"rsrp_class_bounds_dbm", rep.thresholds.rsrp_class_bounds_dbm},
                       {"sinr_class_bounds_db", rep.thresholds.sinr_class_bounds_db},
                       {"deadzone_rsrp_dbm", rep.thresholds.deadzone_rsrp_dbm},
                       {"target_coverage_prob", rep.thresholds.target_coverage_prob}};
    j["rsrp_class_fractions"] = rep.rsrp_class_fractions;
    j["sinr_class_fractions"] = rep.sinr_class_fractions;
    j["covered_fraction"] = rep.covered_fraction;
    j["mean_throughput_bps"] = rep.mean_throughput_bps;
    j["median_throughput_bps"] = rep.median_throughput_bps;
    j["sinr_cdf"] = {{"db", rep.sinr_cdf_db}, {"fraction", rep.sinr_cdf_fraction}};
    return j;
}

json dead_zones_to_json(const DeadZoneSet& dz, const Grid& grid) {
    json zones = json::array();
    for (const auto& z : dz.zones) {
        const double cx = grid.origin.x + (z.centroid_col + 0.5) * grid.resolution_m;
        const double cy = grid.origin.y + (grid.height_px - z.centroid_row - 0.5) * grid.resolution_m;
        zones.push_back({{"n_pixels", z.pixels.size()},
                         {"area_m2", z.area_m2},
                         {"centroid_row", z.centroid_row},
                         {"centroid_col", z.centroid_col},
                         {"centroid_xy_m", {cx, cy}}});
    }
    return {{"total_area_m2", dz.total_area_m2},
            {"n_zones", dz.zones.size()},
            {"zones", std::move(zones)}};
}

json placement_to_json(const PlacementResult& placement) {
    json placed = json::array();
    for (const auto& u : placement.placed)
        placed.push_back({{"ris_id", u.ris_id},
                          {"position", {u.position.x, u.position.y}},
                          {"height_m", u.height_m},
                          {"normal_azimuth_deg", u.normal_azimuth_deg},
                          {"mode", to_string(u.mode)},
                          {"beta_r", u.beta_r},
                          {"gain_db", u.gain_db},
                          {"reflection_loss_db", u.reflection_loss_db},
                          {"donor_site", u.donor_site}});
    return {{"placed", std::move(placed)},
            {"marginal_gain_m2", placement.marginal_gain_m2},
            {"initial_coverage_prob", placement.initial_coverage_prob},
            {"achieved_coverage_prob", placement.achieved_coverage_prob}};
}

json delta_to_json(const DeltaReport& delta) {
    return {{"before", report_to_json(delta.before)},
            {"after", report_to_json(delta.after)},
            {"before_dead_zone_m2", delta.before_dead_zone_m2},
            {"after_dead_zone_m2", delta.after_dead_zone_m2},
            {"rsrp_class_rel_change_pct", delta.rsrp_class_rel_change_pct},
            {"sinr_class_rel_change_pct", delta.sinr_class_rel_change_pct},
            {"covered_fraction_rel_change_pct", delta.covered_fraction_rel_change_pct},
            {"dead_zone_area_change_pct", delta.dead_zone_area_change_pct}};
}

json pipeline_to_json(const PipelineResult& result, const std::string& scenario_digest,
                      const std::string& band_id) {
    json j;
    j["scenario_digest"] = scenario_digest;
    j["band"] = band_id;
    j["before"] = report_to_json(result.before_report);
    j["before"]["dead_zones"] = dead_zones_to_json(result.before_zones, result.before_maps.rsrp.grid);
    j["after"] = report_to_json(result.after_report);
    j["after"]["dead_zones"] = dead_zones_to_json(result.after_zones, result.after_maps.rsrp.grid);
    j["placement"] = placement_to_json(result.placement);
    j["placement"]["n_candidates"] = result.n_candidates;
    j["delta"] = delta_to_json(result.delta);
    return j;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write report: " + path);
    out << j.dump(2) << "\n";
}

} // namespace risplan
