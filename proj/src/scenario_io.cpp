#include "risplan/scenario_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace risplan {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& path) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known)
            throw ScenarioError(path + ": unknown key '" + it.key() + "'");
    }
}

const json& require(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end())
        throw ScenarioError(path + ": missing key '" + key + "'");
    return *it;
}

double number_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number())
        throw ScenarioError(path + "." + key + ": expected a number");
    return v.get<double>();
}

std::string string_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string())
        throw ScenarioError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

Vec2 vec2_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ScenarioError(path + "." + key + ": expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

json vec2_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

ClutterGrid load_clutter_pgm(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot open clutter raster: " + path);
    std::string magic;
    in >> magic;
    if (magic != "P2")
        throw ScenarioError(path + ": expected plain PGM (P2)");
    auto next_token = [&](long& value) {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            value = std::stol(tok);
            return;
        }
        throw ScenarioError(path + ": truncated PGM");
    };
    long w = 0, h = 0, maxval = 0;
    next_token(w);
    next_token(h);
    next_token(maxval);
    if (w != grid.width_px || h != grid.height_px)
        throw ScenarioError(path + ": PGM dimensions do not match scenario grid");
    ClutterGrid cg;
    cg.grid = grid;
    cg.height_m.resize(grid.n_pixels());
    for (std::size_t i = 0; i < cg.height_m.size(); ++i) {
        long v;
        next_token(v);
        cg.height_m[i] = static_cast<float>(v);
    }
    return cg;
}

void save_clutter_pgm(const ClutterGrid& clutter, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ScenarioError("cannot write clutter raster: " + path);
    long maxval = 1;
    for (float v : clutter.height_m)
        maxval = std::max(maxval, std::lround(v));
    out << "P2\n# building height in meters, row-major, north-up\n";
    out << clutter.grid.width_px << " " << clutter.grid.height_px << "\n" << maxval << "\n";
    for (int r = 0; r < clutter.grid.height_px; ++r) {
        for (int c = 0; c < clutter.grid.width_px; ++c) {
            if (c) out << ' ';
            out << std::lround(clutter.at(r, c));
        }
        out << '\n';
    }
}

Scenario load_scenario(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    if (!j.is_object())
        throw ScenarioError("scenario document must be a JSON object");
    reject_unknown_keys(j, {"grid", "clutter", "carriers", "sites", "ris_units", "ue", "thresholds"}, "$");

    Scenario s;

    const json& jg = require(j, "grid", "$");
    reject_unknown_keys(jg, {"width_px", "height_px", "resolution_m", "origin"}, "grid");
    Grid& g = s.clutter.grid;
    g.width_px = static_cast<int>(number_at(jg, "width_px", "grid"));
    g.height_px = static_cast<int>(number_at(jg, "height_px", "grid"));
    g.resolution_m = number_at(jg, "resolution_m", "grid");
    g.origin = vec2_at(jg, "origin", "grid");

    const json& jc = require(j, "clutter", "$");
    reject_unknown_keys(jc, {"inline", "file"}, "clutter");
    if (auto it = jc.find("inline"); it != jc.end()) {
        if (!it->is_array() || it->size() != g.n_pixels())
            throw ScenarioError("clutter.inline: expected row-major array of width_px*height_px heights");
        s.clutter.height_m.reserve(it->size());
        for (const auto& v : *it) {
            if (!v.is_number())
                throw ScenarioError("clutter.inline: heights must be numbers");
            s.clutter.height_m.push_back(v.get<float>());
        }
    } else if (auto itf = jc.find("file"); itf != jc.end()) {
        s.clutter = load_clutter_pgm(base_dir + "/" + itf->get<std::string>(), g);
    } else {
        throw ScenarioError("clutter: needs either 'inline' or 'file'");
    }

    for (std::size_t i = 0; i < require(j, "carriers", "$").size(); ++i) {
        const json& e = j["carriers"][i];
        const std::string path = "carriers[" + std::to_string(i) + "]";
        reject_unknown_keys(e, {"band_id", "center_freq_ghz", "bandwidth_mhz"}, path);
        Carrier c;
        c.band_id = string_at(e, "band_id", path);
        c.center_freq_ghz = number_at(e, "center_freq_ghz", path);
        c.bandwidth_mhz = number_at(e, "bandwidth_mhz", path);
        s.carriers.push_back(std::move(c));
    }

    for (std::size_t i = 0; i < require(j, "sites", "$").size(); ++i) {
        const json& e = j["sites"][i];
        const std::string path = "sites[" + std::to_string(i) + "]";
        reject_unknown_keys(e, {"site_id", "position", "height_m", "azimuth_deg",
                                "tx_power_dbm", "antenna_gain_dbi", "carrier"}, path);
        Site st;
        st.site_id = string_at(e, "site_id", path);
        st.position = vec2_at(e, "position", path);
        st.height_m = number_at(e, "height_m", path);
        st.azimuth_deg = number_at(e, "azimuth_deg", path);
        st.tx_power_dbm = number_at(e, "tx_power_dbm", path);
        st.antenna_gain_dbi = number_at(e, "antenna_gain_dbi", path);
        st.carrier = string_at(e, "carrier", path);
        s.sites.push_back(std::move(st));
    }

    for (std::size_t i = 0; i < require(j, "ris_units", "$").size(); ++i) {
        const json& e = j["ris_units"][i];
        const std::string path = "ris_units[" + std::to_string(i) + "]";
        reject_unknown_keys(e, {"ris_id", "position", "height_m", "normal_azimuth_deg", "mode",
                                "beta_r", "gain_db", "reflection_loss_db", "donor_site", "hardware"}, path);
        RisUnit r;
        r.ris_id = string_at(e, "ris_id", path);
        r.position = vec2_at(e, "position", path);
        r.height_m = number_at(e, "height_m", path);
        r.normal_azimuth_deg = number_at(e, "normal_azimuth_deg", path);
        try {
            r.mode = ris_mode_from_string(string_at(e, "mode", path));
        } catch (const std::invalid_argument& ex) {
            throw ScenarioError(path + ".mode: " + ex.what());
        }
        r.beta_r = number_at(e, "beta_r", path);
        r.gain_db = number_at(e, "gain_db", path);
        r.reflection_loss_db = number_at(e, "reflection_loss_db", path);
        r.donor_site = string_at(e, "donor_site", path);
        if (auto ith = e.find("hardware"); ith != e.end()) {
            const std::string hp = path + ".hardware";
            reject_unknown_keys(*ith, {"n_elements", "phase_bits", "width_m", "control_voltage_v",
                                       "consumption_w", "phase_diff_on_off_deg"}, hp);
            RisHardwareProfile hw;
            hw.n_elements = number_at(*ith, "n_elements", hp);
            hw.phase_bits = number_at(*ith, "phase_bits", hp);
            hw.width_m = number_at(*ith, "width_m", hp);
            hw.control_voltage_v = number_at(*ith, "control_voltage_v", hp);
            hw.consumption_w = number_at(*ith, "consumption_w", hp);
            hw.phase_diff_on_off_deg = number_at(*ith, "phase_diff_on_off_deg", hp);
            r.hardware = hw;
        }
        s.ris_units.push_back(std::move(r));
    }

    const json& ju = require(j, "ue", "$");
    reject_unknown_keys(ju, {"height_m", "noise_figure_db"}, "ue");
    s.ue.height_m = number_at(ju, "height_m", "ue");
    s.ue.noise_figure_db = number_at(ju, "noise_figure_db", "ue");

    const json& jt = require(j, "thresholds", "$");
    reject_unknown_keys(jt, {"rsrp_class_bounds_dbm", "sinr_class_bounds_db",
                             "deadzone_rsrp_dbm", "target_coverage_prob"}, "thresholds");
    s.thresholds.rsrp_class_bounds_dbm =
        require(jt, "rsrp_class_bounds_dbm", "thresholds").get<std::vector<double>>();
    s.thresholds.sinr_class_bounds_db =
        require(jt, "sinr_class_bounds_db", "thresholds").get<std::vector<double>>();
    s.thresholds.deadzone_rsrp_dbm = number_at(jt, "deadzone_rsrp_dbm", "thresholds");
    s.thresholds.target_coverage_prob = number_at(jt, "target_coverage_prob", "thresholds");

    auto violations = validate(s);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "scenario validation failed:";
        for (const auto& v : violations)
            os << "\n  " << v.path << ": " << v.message;
        throw ScenarioError(os.str());
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::string dir = ".";
    if (auto pos = path.find_last_of('/'); pos != std::string::npos)
        dir = path.substr(0, pos);
    return load_scenario(read_file(path), dir);
}

std::string save_scenario(const Scenario& s) {
    json j;
    const Grid& g = s.clutter.grid;
    j["grid"] = {{"width_px", g.width_px},
                 {"height_px", g.height_px},
                 {"resolution_m", g.resolution_m},
                 {"origin", vec2_to_json(g.origin)}};

    json heights = json::array();
    for (float v : s.clutter.height_m)
        heights.push_back(v);
    j["clutter"] = {{"inline", std::move(heights)}};

    j["carriers"] = json::array();
    for (const auto& c : s.carriers)
        j["carriers"].push_back({{"band_id", c.band_id},
                                 {"center_freq_ghz", c.center_freq_ghz},
                                 {"bandwidth_mhz", c.bandwidth_mhz}});

    j["sites"] = json::array();
    for (const auto& st : s.sites)
        j["sites"].push_back({{"site_id", st.site_id},
                              {"position", vec2_to_json(st.position)},
                              {"height_m", st.height_m},
                              {"azimuth_deg", st.azimuth_deg},
                              {"tx_power_dbm", st.tx_power_dbm},
                              {"antenna_gain_dbi", st.antenna_gain_dbi},
                              {"carrier", st.carrier}});

    j["ris_units"] = json::array();
    for (const auto& r : s.ris_units) {
        json e = {{"ris_id", r.ris_id},
                  {"position", vec2_to_json(r.position)},
                  {"height_m", r.height_m},
                  {"normal_azimuth_deg", r.normal_azimuth_deg},
                  {"mode", to_string(r.mode)},
                  {"beta_r", r.beta_r},
                  {"gain_db", r.gain_db},
                  {"reflection_loss_db", r.reflection_loss_db},
                  {"donor_site", r.donor_site}};
        if (r.hardware) {
            e["hardware"] = {{"n_elements", r.hardware->n_elements},
                             {"phase_bits", r.hardware->phase_bits},
                             {"width_m", r.hardware->width_m},
                             {"control_voltage_v", r.hardware->control_voltage_v},
                             {"consumption_w", r.hardware->consumption_w},
                             {"phase_diff_on_off_deg", r.hardware->phase_diff_on_off_deg}};
        }
        j["ris_units"].push_back(std::move(e));
    }

    j["ue"] = {{"height_m", s.ue.height_m}, {"noise_figure_db", s.ue.noise_figure_db}};
    j["thresholds"] = {{"rsrp_class_bounds_dbm", s.thresholds.rsrp_class_bounds_dbm},
                       {"sinr_class_bounds_db", s.thresholds.sinr_class_bounds_db},
                       {"deadzone_rsrp_dbm", s.thresholds.deadzone_rsrp_dbm},
                       {"target_coverage_prob", s.thresholds.target_coverage_prob}};
    return j.dump(2) + "\n";
}

void save_scenario_file(const Scenario& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ScenarioError("cannot write scenario: " + path);
    out << save_scenario(s);
}

std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hexd = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hexd[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace risplan
