#pragma once

#include <stdexcept>
#include <string>

#include "risplan/scenario.hpp"

namespace risplan {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a scenario document (JSON). `base_dir` resolves relative clutter
// raster references. Throws ScenarioError on malformed input or any
// invariant violation (the message carries the field path).
Scenario load_scenario(const std::string& text, const std::string& base_dir = ".");
Scenario load_scenario_file(const std::string& path);

// Serializes with the clutter raster inlined. load(save(s)) == s.
std::string save_scenario(const Scenario& s);
void save_scenario_file(const Scenario& s, const std::string& path);

// Plain-text PGM (P2); pixel value = building height in whole meters,
// row-major, north-up.
ClutterGrid load_clutter_pgm(const std::string& path, const Grid& grid);
void save_clutter_pgm(const ClutterGrid& clutter, const std::string& path);

// FNV-1a 64 digest of a document, as 16 hex chars.
std::string digest_hex(const std::string& bytes);

} // namespace risplan
