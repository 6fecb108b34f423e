#pragma once

#include <string>

#include "risplan/planner.hpp"

#include <json.hpp>

namespace risplan {

nlohmann::json report_to_json(const CoverageReport& rep);
nlohmann::json dead_zones_to_json(const DeadZoneSet& dz, const Grid& grid);
nlohmann::json placement_to_json(const PlacementResult& placement);
nlohmann::json delta_to_json(const DeltaReport& delta);

// Combined pipeline report: {scenario_digest, band, before, after,
// placement, delta}.
nlohmann::json pipeline_to_json(const PipelineResult& result, const std::string& scenario_digest,
                                const std::string& band_id);

void write_json_file(const nlohmann::json& j, const std::string& path);

} // namespace risplan
