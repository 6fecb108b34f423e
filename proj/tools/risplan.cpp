// risplan: raster planning/optimization for RIS-assisted radio networks.
//
// Subcommands: generate, simulate, deadzones, place-ris, pipeline, compare.
// Exit codes: 0 success, 2 usage error, 3 data/validation error, 4 internal
// invariant breach. Outputs are pure functions of inputs and flags; --jobs
// only changes wall time.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "risplan/planner.hpp"
#include "risplan/raster_io.hpp"
#include "risplan/report_io.hpp"
#include "risplan/scenario_io.hpp"
#include "risplan/synthetic.hpp"

namespace fs = std::filesystem;
using namespace risplan;

namespace {

int log_level() {
    const char* v = std::getenv("RISPLAN_LOG");
    if (!v) return 0;
    const std::string s(v);
    if (s == "debug") return 2;
    if (s == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1)
        std::cerr << "[risplan] " << msg << "\n";
}

struct ExportFlags {
    bool csv{true}, pgm{false}, png{false}, json{true};
};

ExportFlags parse_formats(const std::string& list) {
    ExportFlags f{false, false, false, false};
    std::istringstream is(list);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok == "csv") f.csv = true;
        else if (tok == "pgm") f.pgm = true;
        else if (tok == "png") f.png = true;
        else if (tok == "json") f.json = true;
        else throw CLI::ValidationError("--formats", "unknown format '" + tok + "'");
    }
    return f;
}

void export_map_set(const MapSet& maps, const ThresholdConfig& t, const ExportFlags& f,
                    const fs::path& dir) {
    struct Entry {
        const RasterMap* map;
        const char* name;
        const char* units;
        const std::vector<double>* bounds;
    };
    const Entry entries[] = {
        {&maps.rsrp, "rsrp", "dBm", &t.rsrp_class_bounds_dbm},
        {&maps.sinr, "sinr", "dB", &t.sinr_class_bounds_db},
        {&maps.throughput, "throughput", "bps", nullptr},
        {&maps.best_server, "best_server", "server-index", nullptr},
    };
    for (const auto& e : entries) {
        if (f.csv) save_raster_csv(*e.map, e.name, e.units, (dir / (std::string(e.name) + ".csv")).string());
        if (f.pgm) save_raster_pgm(*e.map, e.name, e.units, (dir / (std::string(e.name) + ".pgm")).string());
        if (f.png)
            save_raster_png(*e.map, e.bounds ? *e.bounds : std::vector<double>{},
                            (dir / (std::string(e.name) + ".png")).string());
    }
    nlohmann::json legend = nlohmann::json::array();
    for (const auto& name : maps.server_legend)
        legend.push_back(name);
    write_json_file({{"server_legend", std::move(legend)}}, (dir / "server_legend.json").string());
}

std::string read_file_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct LoadedScenario {
    Scenario scenario;
    std::string digest;
};

LoadedScenario load_with_digest(const std::string& path) {
    const std::string bytes = read_file_or_throw(path);
    std::string dir = ".";
    if (auto pos = path.find_last_of('/'); pos != std::string::npos)
        dir = path.substr(0, pos);
    return {load_scenario(bytes, dir), digest_hex(bytes)};
}

const Carrier& select_band_or_throw(const Scenario& s, const std::string& selector) {
    const Carrier* band = s.select_band(selector);
    if (!band)
        throw ScenarioError("band '" + selector + "' not found in scenario");
    return *band;
}

PlacementConstraints constraints_from_flags(const Carrier& band, int max_ris, double target_cov,
                                            double ris_gain, double ris_height) {
    PlacementConstraints c = PlacementConstraints::defaults_for(band.center_freq_ghz);
    if (max_ris >= 0) c.max_ris = max_ris;
    if (target_cov > 0.0) c.target_coverage_prob = target_cov;
    if (ris_gain >= 0.0) c.ris_gain_db = ris_gain;
    if (ris_height > 0.0) c.ris_height_m = ris_height;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted radio network planning"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "write a synthetic Manhattan-grid scenario");
    std::string gen_out = "scenario.json";
    std::string gen_grid = "520x520";
    std::string gen_band = "3.5";
    std::uint64_t gen_seed = 42;
    double gen_res = 5.0, gen_block = 45.0, gen_street = 25.0;
    int gen_sites = 8, gen_hmin = 0, gen_hmax = 18;
    double gen_ant_gain = -1.0;
    gen->add_option("--out", gen_out, "output scenario path");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--grid", gen_grid, "grid size WxH in pixels");
    gen->add_option("--res", gen_res, "pixel resolution in meters");
    gen->add_option("--sites", gen_sites, "number of sites");
    gen->add_option("--band", gen_band, "carrier: 3.5 or 28");
    gen->add_option("--block", gen_block, "building block size (m)");
    gen->add_option("--street", gen_street, "street width (m)");
    gen->add_option("--hmin", gen_hmin, "min building height (m)");
    gen->add_option("--hmax", gen_hmax, "max building height (m)");
    gen->add_option("--ant-gain", gen_ant_gain, "site antenna gain (dBi), default per band");

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "compute coverage/quality/throughput maps");
    std::string sim_scenario, sim_band = "3.5", sim_out = "out", sim_formats = "csv,json";
    int sim_jobs = 1;
    double sim_cutoff = std::numeric_limits<double>::quiet_NaN();
    sim->add_option("--scenario", sim_scenario, "scenario JSON")->required();
    sim->add_option("--band", sim_band, "band id or frequency");
    sim->add_option("--out", sim_out, "output directory");
    sim->add_option("--formats", sim_formats, "comma list of csv,pgm,png,json");
    sim->add_option("--jobs", sim_jobs, "worker threads (never changes outputs)");
    sim->add_option("--cutoff-dbm", sim_cutoff, "dead-zone RSRP cutoff override");

    // ---- deadzones ----
    auto* dzc = app.add_subcommand("deadzones", "detect coverage dead zones");
    std::string dz_scenario, dz_band = "3.5", dz_out = "out";
    int dz_jobs = 1;
    double dz_cutoff = std::numeric_limits<double>::quiet_NaN();
    double dz_min_area = -1.0;
    dzc->add_option("--scenario", dz_scenario, "scenario JSON")->required();
    dzc->add_option("--band", dz_band, "band id or frequency");
    dzc->add_option("--out", dz_out, "output directory");
    dzc->add_option("--cutoff-dbm", dz_cutoff, "RSRP cutoff override");
    dzc->add_option("--min-area", dz_min_area, "minimum zone area (m^2)");
    dzc->add_option("--jobs", dz_jobs, "worker threads");

    // ---- place-ris ----
    auto* plc = app.add_subcommand("place-ris", "greedy RIS placement against dead zones");
    std::string pl_scenario, pl_band = "3.5", pl_out = "out";
    int pl_jobs = 1, pl_max_ris = -1;
    double pl_target = -1.0, pl_gain = -1.0, pl_height = -1.0;
    plc->add_option("--scenario", pl_scenario, "scenario JSON")->required();
    plc->add_option("--band", pl_band, "band id or frequency");
    plc->add_option("--out", pl_out, "output directory");
    plc->add_option("--max-ris", pl_max_ris, "placement budget");
    plc->add_option("--target-cov", pl_target, "coverage probability target");
    plc->add_option("--ris-gain", pl_gain, "planning RIS gain (dB)");
    plc->add_option("--ris-height", pl_height, "RIS mounting height (m)");
    plc->add_option("--jobs", pl_jobs, "worker threads");

    // ---- pipeline ----
    auto* pip = app.add_subcommand("pipeline", "full plan/simulate/place/compare flow");
    std::string pip_scenario, pip_band = "3.5", pip_out = "out", pip_formats = "csv,json";
    int pip_jobs = 1, pip_max_ris = -1;
    double pip_target = -1.0, pip_gain = -1.0, pip_height = -1.0;
    pip->add_option("--scenario", pip_scenario, "scenario JSON")->required();
    pip->add_option("--band", pip_band, "band id or frequency");
    pip->add_option("--out", pip_out, "output directory");
    pip->add_option("--formats", pip_formats, "comma list of csv,pgm,png,json");
    pip->add_option("--max-ris", pip_max_ris, "placement budget");
    pip->add_option("--target-cov", pip_target, "coverage probability target");
    pip->add_option("--ris-gain", pip_gain, "planning RIS gain (dB)");
    pip->add_option("--ris-height", pip_height, "RIS mounting height (m)");
    pip->add_option("--jobs", pip_jobs, "worker threads (never changes outputs)");

    // ---- compare ----
    auto* cmp = app.add_subcommand("compare", "delta report from two simulate output dirs");
    std::string cmp_before, cmp_after, cmp_out = "delta.json";
    cmp->add_option("--before", cmp_before, "directory with report.json + deadzones.json")->required();
    cmp->add_option("--after", cmp_after, "directory with report.json + deadzones.json")->required();
    cmp->add_option("--out", cmp_out, "output delta JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            SyntheticSpec spec = reference_spec_3p5ghz();
            auto xpos = gen_grid.find('x');
            if (xpos == std::string::npos) {
                std::cerr << "error: --grid expects WxH\n";
                return 2;
            }
            spec.width_px = std::stoi(gen_grid.substr(0, xpos));
            spec.height_px = std::stoi(gen_grid.substr(xpos + 1));
            spec.resolution_m = gen_res;
            spec.block_m = gen_block;
            spec.street_m = gen_street;
            spec.height_min_m = gen_hmin;
            spec.height_max_m = gen_hmax;
            spec.n_sites = gen_sites;
            if (gen_band == "28")
                spec.carrier = {"n257", 28.0, 200.0};
            else if (gen_band == "3.5")
                spec.carrier = {"n78", 3.5, 100.0};
            else {
                std::cerr << "error: --band must be 3.5 or 28\n";
                return 2;
            }
            if (gen_ant_gain >= 0.0)
                spec.site_antenna_gain_dbi = gen_ant_gain;

            Scenario s;
            try {
                s = generate_synthetic(gen_seed, spec);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
            save_scenario_file(s, gen_out);
            std::cout << "wrote " << gen_out << ": " << s.clutter.grid.area_m2() / 1e6
                      << " km^2, " << s.sites.size() << " sites @ " << spec.carrier.center_freq_ghz
                      << " GHz\n";
            return 0;
        }

        if (sim->parsed()) {
            auto [s, digest] = load_with_digest(sim_scenario);
            if (!std::isnan(sim_cutoff)) s.thresholds.deadzone_rsrp_dbm = sim_cutoff;
            const Carrier& band = select_band_or_throw(s, sim_band);
            const ExportFlags fmts = parse_formats(sim_formats);
            fs::create_directories(sim_out);

            MapParams params;
            params.ris_constraints = PlacementConstraints::defaults_for(band.center_freq_ghz);
            params.jobs = sim_jobs;
            log_info("simulating band " + band.band_id);
            const MapSet maps = compute_maps(s, band, params);
            const CoverageReport rep = coverage_stats(maps, s.thresholds);
            const DeadZoneSet zones =
                detect_dead_zones(maps.rsrp, s.thresholds.deadzone_rsrp_dbm,
                                  4.0 * s.clutter.grid.resolution_m * s.clutter.grid.resolution_m);

            export_map_set(maps, s.thresholds, fmts, sim_out);
            if (fmts.json) {
                nlohmann::json j = report_to_json(rep);
                j["scenario_digest"] = digest;
                j["band"] = band.band_id;
                write_json_file(j, (fs::path(sim_out) / "report.json").string());
                write_json_file(dead_zones_to_json(zones, s.clutter.grid),
                                (fs::path(sim_out) / "deadzones.json").string());
            }
            std::cout << "band " << band.band_id << ": covered " << rep.covered_fraction * 100.0
                      << "%, dead zones " << zones.total_area_m2 / 1e6 << " km^2\n";
            return 0;
        }

        if (dzc->parsed()) {
            auto [s, digest] = load_with_digest(dz_scenario);
            if (!std::isnan(dz_cutoff)) s.thresholds.deadzone_rsrp_dbm = dz_cutoff;
            const Carrier& band = select_band_or_throw(s, dz_band);
            fs::create_directories(dz_out);
            MapParams params;
            params.ris_constraints = PlacementConstraints::defaults_for(band.center_freq_ghz);
            params.jobs = dz_jobs;
            const MapSet maps = compute_maps(s, band, params);
            const double res = s.clutter.grid.resolution_m;
            const double min_area = dz_min_area < 0.0 ? 4.0 * res * res : dz_min_area;
            const DeadZoneSet zones =
                detect_dead_zones(maps.rsrp, s.thresholds.deadzone_rsrp_dbm, min_area);
            write_json_file(dead_zones_to_json(zones, s.clutter.grid),
                            (fs::path(dz_out) / "deadzones.json").string());
            std::cout << zones.zones.size() << " zones, total " << zones.total_area_m2 / 1e6
                      << " km^2\n";
            return 0;
        }

        if (plc->parsed() || pip->parsed()) {
            const bool full = pip->parsed();
            const std::string in_path = full ? pip_scenario : pl_scenario;
            const std::string band_sel = full ? pip_band : pl_band;
            const std::string out_dir = full ? pip_out : pl_out;
            const int jobs = full ? pip_jobs : pl_jobs;

            auto [s, digest] = load_with_digest(in_path);
            const Carrier& band = select_band_or_throw(s, band_sel);
            const PlacementConstraints constraints = constraints_from_flags(
                band, full ? pip_max_ris : pl_max_ris, full ? pip_target : pl_target,
                full ? pip_gain : pl_gain, full ? pip_height : pl_height);
            fs::create_directories(out_dir);

            PipelineOptions opts;
            opts.jobs = jobs;
            log_info("running pipeline on band " + band.band_id);
            const PipelineResult result = run_pipeline(s, band, constraints, opts);

            // Placed units as a reloadable scenario fragment plus the full
            // after-scenario document.
            Scenario after = s;
            for (const auto& u : result.placement.placed)
                after.ris_units.push_back(u);
            write_json_file(placement_to_json(result.placement),
                            (fs::path(out_dir) / "placement.json").string());
            save_scenario_file(after, (fs::path(out_dir) / "after_scenario.json").string());

            if (full) {
                const ExportFlags fmts = parse_formats(pip_formats);
                fs::create_directories(fs::path(out_dir) / "before");
                fs::create_directories(fs::path(out_dir) / "after");
                export_map_set(result.before_maps, s.thresholds, fmts,
                               fs::path(out_dir) / "before");
                export_map_set(result.after_maps, s.thresholds, fmts, fs::path(out_dir) / "after");
                write_json_file(pipeline_to_json(result, digest, band.band_id),
                                (fs::path(out_dir) / "report.json").string());
                write_json_file(delta_to_json(result.delta),
                                (fs::path(out_dir) / "delta.json").string());
            }

            const auto& rep_b = result.before_report;
            const auto& rep_a = result.after_report;
            const double good_exc_b = rep_b.rsrp_class_fractions[0] + rep_b.rsrp_class_fractions[1];
            const double good_exc_a = rep_a.rsrp_class_fractions[0] + rep_a.rsrp_class_fractions[1];
            const double good_exc_pct =
                (good_exc_a - good_exc_b) / std::max(good_exc_b, 1e-9) * 100.0;
            std::cout << "placed " << result.placement.placed.size() << ", dead-zone change "
                      << result.delta.dead_zone_area_change_pct << "%, good+excellent change "
                      << good_exc_pct << "%\n";
            return 0;
        }

        if (cmp->parsed()) {
            auto read_json = [](const std::string& p) {
                std::ifstream in(p);
                if (!in)
                    throw ScenarioError("cannot open " + p);
                return nlohmann::json::parse(in);
            };
            auto parse_report = [](const nlohmann::json& j) {
                CoverageReport rep;
                rep.grid.width_px = j.at("grid").at("width_px").get<int>();
                rep.grid.height_px = j.at("grid").at("height_px").get<int>();
                rep.grid.resolution_m = j.at("grid").at("resolution_m").get<double>();
                rep.grid.origin = {j.at("grid").at("origin")[0].get<double>(),
                                   j.at("grid").at("origin")[1].get<double>()};
                const auto& t = j.at("thresholds");
                rep.thresholds.rsrp_class_bounds_dbm =
                    t.at("rsrp_class_bounds_dbm").get<std::vector<double>>();
                rep.thresholds.sinr_class_bounds_db =
                    t.at("sinr_class_bounds_db").get<std::vector<double>>();
                rep.thresholds.deadzone_rsrp_dbm = t.at("deadzone_rsrp_dbm").get<double>();
                rep.thresholds.target_coverage_prob = t.at("target_coverage_prob").get<double>();
                rep.rsrp_class_fractions = j.at("rsrp_class_fractions").get<std::vector<double>>();
                rep.sinr_class_fractions = j.at("sinr_class_fractions").get<std::vector<double>>();
                rep.covered_fraction = j.at("covered_fraction").get<double>();
                rep.mean_throughput_bps = j.at("mean_throughput_bps").get<double>();
                rep.median_throughput_bps = j.at("median_throughput_bps").get<double>();
                rep.sinr_cdf_db = j.at("sinr_cdf").at("db").get<std::vector<double>>();
                rep.sinr_cdf_fraction = j.at("sinr_cdf").at("fraction").get<std::vector<double>>();
                return rep;
            };
            const CoverageReport before =
                parse_report(read_json((fs::path(cmp_before) / "report.json").string()));
            const CoverageReport after =
                parse_report(read_json((fs::path(cmp_after) / "report.json").string()));
            DeadZoneSet bz, az;
            bz.total_area_m2 =
                read_json((fs::path(cmp_before) / "deadzones.json").string()).at("total_area_m2").get<double>();
            az.total_area_m2 =
                read_json((fs::path(cmp_after) / "deadzones.json").string()).at("total_area_m2").get<double>();
            const DeltaReport delta = compare(before, bz, after, az);
            write_json_file(delta_to_json(delta), cmp_out);
            std::cout << "dead-zone change " << delta.dead_zone_area_change_pct << "%\n";
            return 0;
        }
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
