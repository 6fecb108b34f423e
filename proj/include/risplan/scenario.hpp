#pragma once

#include <optional>
#include <string>
#include <vector>

#include "risplan/grid.hpp"

namespace risplan {

struct Carrier {
    std::string band_id;
    double center_freq_ghz{0.0};
    double bandwidth_mhz{0.0};
};

struct Site {
    std::string site_id;
    Vec2 position;
    double height_m{25.0};
    double azimuth_deg{0.0};
    double tx_power_dbm{18.0};
    double antenna_gain_dbi{0.0};
    std::string carrier; // band_id reference
};

struct UeProfile {
    double height_m{1.5};
    double noise_figure_db{5.0};
};

// Descriptive hardware metadata; never enters link computations.
struct RisHardwareProfile {
    double n_elements{0.0};
    double phase_bits{0.0};
    double width_m{0.0};
    double control_voltage_v{0.0};
    double consumption_w{0.0};
    double phase_diff_on_off_deg{0.0};
};

enum class RisMode { ReflectOnly, Star };

const char* to_string(RisMode m);
RisMode ris_mode_from_string(const std::string& s);

struct RisUnit {
    std::string ris_id;
    Vec2 position;
    double height_m{5.0};
    double normal_azimuth_deg{0.0}; // outward facade normal
    RisMode mode{RisMode::ReflectOnly};
    double beta_r{1.0}; // reflect-side energy fraction
    double gain_db{0.0};
    double reflection_loss_db{0.0};
    std::string donor_site;
    std::optional<RisHardwareProfile> hardware;
};

struct ThresholdConfig {
    // Strictly decreasing boundaries; four classes per metric:
    // excellent >= bounds[0] > good >= bounds[1] > fair >= bounds[2] > poor.
    std::vector<double> rsrp_class_bounds_dbm{-80.0, -90.0, -100.0};
    std::vector<double> sinr_class_bounds_db{20.0, 13.0, 10.0};
    double deadzone_rsrp_dbm{-100.0};
    double target_coverage_prob{0.95};

    bool operator==(const ThresholdConfig& o) const {
        return rsrp_class_bounds_dbm == o.rsrp_class_bounds_dbm &&
               sinr_class_bounds_db == o.sinr_class_bounds_db &&
               deadzone_rsrp_dbm == o.deadzone_rsrp_dbm &&
               target_coverage_prob == o.target_coverage_prob;
    }
};

inline int classify(double value, const std::vector<double>& bounds) {
    for (std::size_t k = 0; k < bounds.size(); ++k)
        if (value >= bounds[k]) return static_cast<int>(k);
    return static_cast<int>(bounds.size());
}

struct Scenario {
    ClutterGrid clutter;
    std::vector<Carrier> carriers;
    std::vector<Site> sites;
    std::vector<RisUnit> ris_units;
    UeProfile ue;
    ThresholdConfig thresholds;

    const Carrier* find_carrier(const std::string& band_id) const;
    const Site* find_site(const std::string& site_id) const;
    const RisUnit* find_ris(const std::string& ris_id) const;

    // Resolves a CLI-style band selector: exact band_id match first, then a
    // numeric match on center frequency (e.g. "3.5" or "28").
    const Carrier* select_band(const std::string& selector) const;
};

struct Violation {
    std::string path;
    std::string message;
};

std::vector<Violation> validate(const Scenario& s);

} // namespace risplan
