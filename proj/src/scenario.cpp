#include "risplan/scenario.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace risplan {

const char* to_string(RisMode m) {
    return m == RisMode::ReflectOnly ? "reflect-only" : "star";
}

RisMode ris_mode_from_string(const std::string& s) {
    if (s == "reflect-only") return RisMode::ReflectOnly;
    if (s == "star") return RisMode::Star;
    throw std::invalid_argument("unknown RIS mode: " + s);
}

const Carrier* Scenario::find_carrier(const std::string& band_id) const {
    for (const auto& c : carriers)
        if (c.band_id == band_id) return &c;
    return nullptr;
}

const Site* Scenario::find_site(const std::string& site_id) const {
    for (const auto& s : sites)
        if (s.site_id == site_id) return &s;
    return nullptr;
}

const RisUnit* Scenario::find_ris(const std::string& ris_id) const {
    for (const auto& r : ris_units)
        if (r.ris_id == ris_id) return &r;
    return nullptr;
}

const Carrier* Scenario::select_band(const std::string& selector) const {
    if (const Carrier* c = find_carrier(selector)) return c;
    try {
        const double f = std::stod(selector);
        for (const auto& c : carriers)
            if (std::abs(c.center_freq_ghz - f) < 0.01) return &c;
    } catch (const std::exception&) {
    }
    return nullptr;
}

namespace {

std::string idx(const std::string& base, std::size_t i, const std::string& field) {
    std::ostringstream os;
    os << base << "[" << i << "]." << field;
    return os.str();
}

} // namespace

std::vector<Violation> validate(const Scenario& s) {
    std::vector<Violation> out;
    const Grid& g = s.clutter.grid;

    if (g.width_px < 1) out.push_back({"grid.width_px", "must be >= 1"});
    if (g.height_px < 1) out.push_back({"grid.height_px", "must be >= 1"});
    if (!(g.resolution_m > 0.0)) out.push_back({"grid.resolution_m", "must be > 0"});

    if (s.clutter.height_m.size() != g.n_pixels())
        out.push_back({"clutter", "height raster size does not match grid dimensions"});
    for (std::size_t i = 0; i < s.clutter.height_m.size(); ++i) {
        if (s.clutter.height_m[i] < 0.0f) {
            out.push_back({"clutter", "building height must be >= 0 (pixel " + std::to_string(i) + ")"});
            break;
        }
    }

    std::set<std::string> carrier_ids;
    for (std::size_t i = 0; i < s.carriers.size(); ++i) {
        const Carrier& c = s.carriers[i];
        if (!(c.center_freq_ghz > 0.0)) out.push_back({idx("carriers", i, "center_freq_ghz"), "must be > 0"});
        if (!(c.bandwidth_mhz > 0.0)) out.push_back({idx("carriers", i, "bandwidth_mhz"), "must be > 0"});
        if (!carrier_ids.insert(c.band_id).second)
            out.push_back({idx("carriers", i, "band_id"), "duplicate band_id '" + c.band_id + "'"});
    }

    std::set<std::string> site_ids;
    for (std::size_t i = 0; i < s.sites.size(); ++i) {
        const Site& st = s.sites[i];
        if (!site_ids.insert(st.site_id).second)
            out.push_back({idx("sites", i, "site_id"), "duplicate site_id '" + st.site_id + "'"});
        if (!(st.height_m > 0.0)) out.push_back({idx("sites", i, "height_m"), "must be > 0"});
        if (!std::isfinite(st.tx_power_dbm))
            out.push_back({idx("sites", i, "tx_power_dbm"), "must be finite"});
        if (!g.contains(st.position))
            out.push_back({idx("sites", i, "position"), "outside grid"});
        if (!carrier_ids.count(st.carrier))
            out.push_back({idx("sites", i, "carrier"), "unknown carrier '" + st.carrier + "'"});
    }

    std::set<std::string> ris_ids;
    for (std::size_t i = 0; i < s.ris_units.size(); ++i) {
        const RisUnit& r = s.ris_units[i];
        if (!ris_ids.insert(r.ris_id).second)
            out.push_back({idx("ris_units", i, "ris_id"), "duplicate ris_id '" + r.ris_id + "'"});
        if (!(r.beta_r > 0.0 && r.beta_r <= 1.0))
            out.push_back({idx("ris_units", i, "beta_r"), "must satisfy 0 < beta_r <= 1"});
        if (r.mode == RisMode::ReflectOnly && r.beta_r != 1.0)
            out.push_back({idx("ris_units", i, "beta_r"), "reflect-only mode requires beta_r = 1"});
        if (r.gain_db < 0.0) out.push_back({idx("ris_units", i, "gain_db"), "must be >= 0"});
        if (r.reflection_loss_db < 0.0)
            out.push_back({idx("ris_units", i, "reflection_loss_db"), "must be >= 0"});
        if (!(r.height_m > 0.0)) out.push_back({idx("ris_units", i, "height_m"), "must be > 0"});
        if (!g.contains(r.position))
            out.push_back({idx("ris_units", i, "position"), "outside grid"});
        if (!site_ids.count(r.donor_site))
            out.push_back({idx("ris_units", i, "donor_site"),
                           "RIS '" + r.ris_id + "' references missing site '" + r.donor_site + "'"});
    }

    if (!(s.ue.height_m > 0.0)) out.push_back({"ue.height_m", "must be > 0"});
    if (s.ue.noise_figure_db < 0.0) out.push_back({"ue.noise_figure_db", "must be >= 0"});

    const ThresholdConfig& t = s.thresholds;
    auto strictly_decreasing = [](const std::vector<double>& v) {
        for (std::size_t k = 1; k < v.size(); ++k)
            if (!(v[k] < v[k - 1])) return false;
        return true;
    };
    if (t.rsrp_class_bounds_dbm.empty() || !strictly_decreasing(t.rsrp_class_bounds_dbm))
        out.push_back({"thresholds.rsrp_class_bounds_dbm", "boundaries must be strictly decreasing"});
    if (t.sinr_class_bounds_db.empty() || !strictly_decreasing(t.sinr_class_bounds_db))
        out.push_back({"thresholds.sinr_class_bounds_db", "boundaries must be strictly decreasing"});
    if (!(t.target_coverage_prob > 0.0 && t.target_coverage_prob <= 1.0))
        out.push_back({"thresholds.target_coverage_prob", "must satisfy 0 < p <= 1"});

    return out;
}

} // namespace risplan
