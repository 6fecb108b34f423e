#include "risplan/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "risplan/parallel.hpp"

namespace risplan {

namespace {

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

std::vector<std::size_t> band_site_indices(const Scenario& s, const Carrier& band) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.sites.size(); ++i)
        if (s.sites[i].carrier == band.band_id) idx.push_back(i);
    // Fixed site_id-ascending order keeps interference sums deterministic.
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return s.sites[a].site_id < s.sites[b].site_id;
    });
    return idx;
}

} // namespace

double noise_floor_dbm(double bandwidth_mhz, double noise_figure_db) {
    return -174.0 + 10.0 * std::log10(bandwidth_mhz * 1e6) + noise_figure_db;
}

std::vector<RxEntry> compute_rx_power(const Scenario& s, const Carrier& band, int row, int col,
                                      const PlacementConstraints& ris_constraints) {
    std::vector<RxEntry> entries;
    for (std::size_t i : band_site_indices(s, band)) {
        const Site& st = s.sites[i];
        const PathlossSample pl = site_pathloss(s, st, row, col);
        entries.push_back({{st.site_id, ""}, st.tx_power_dbm + st.antenna_gain_dbi - pl.pl_db});
    }
    for (const RisUnit& r : s.ris_units) {
        const Site* donor = s.find_site(r.donor_site);
        if (!donor || donor->carrier != band.band_id) continue;
        if (!ris_feasible(s, r, row, col, ris_constraints)) continue;
        const double p = ris_rx_power(s, r, row, col);
        if (!std::isfinite(p)) continue; // zero-energy split side
        entries.push_back({{donor->site_id, r.ris_id}, p});
    }
    std::sort(entries.begin(), entries.end(), [](const RxEntry& a, const RxEntry& b) {
        if (a.power_dbm != b.power_dbm) return a.power_dbm > b.power_dbm;
        if (a.path.site_id != b.path.site_id) return a.path.site_id < b.path.site_id;
        return a.path.ris_id < b.path.ris_id;
    });
    return entries;
}

MapSet compute_maps(const Scenario& s, const Carrier& band, const MapParams& params) {
    const Grid& g = s.clutter.grid;
    const auto site_idx = band_site_indices(s, band);
    if (site_idx.empty())
        throw std::invalid_argument("compute_maps: no site on band " + band.band_id);

    MapSet maps{RasterMap(g), RasterMap(g), RasterMap(g), RasterMap(g), {}};

    // Legend: sites in scenario order, then every RIS path in scenario order.
    std::vector<int> site_legend(s.sites.size(), -1);
    std::vector<int> ris_legend(s.ris_units.size(), -1);
    for (std::size_t i = 0; i < s.sites.size(); ++i) {
        site_legend[i] = static_cast<int>(maps.server_legend.size());
        maps.server_legend.push_back(s.sites[i].site_id);
    }
    for (std::size_t i = 0; i < s.ris_units.size(); ++i) {
        const Site* donor = s.find_site(s.ris_units[i].donor_site);
        ris_legend[i] = static_cast<int>(maps.server_legend.size());
        maps.server_legend.push_back((donor ? donor->site_id : std::string("?")) + "|" +
                                     s.ris_units[i].ris_id);
    }

    const double noise_mw = db_to_lin(noise_floor_dbm(band.bandwidth_mhz, s.ue.noise_figure_db));
    const double bw_hz = band.bandwidth_mhz * 1e6;
    const double tp_cap = params.se_cap_bps_hz * bw_hz;

    parallel_for(static_cast<std::size_t>(g.height_px), params.jobs,
                 [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t row = row_begin; row < row_end; ++row) {
            for (int col = 0; col < g.width_px; ++col) {
                const int r = static_cast<int>(row);
                if (!s.clutter.is_street(r, col)) continue;
                const std::size_t px = g.index(r, col);

                const auto entries =
                    compute_rx_power(s, band, r, col, params.ris_constraints);
                const RxEntry& serving = entries.front();

                double interf_mw = 0.0;
                for (std::size_t i : site_idx) {
                    const Site& st = s.sites[i];
                    if (st.site_id == serving.path.site_id) continue;
                    for (const RxEntry& e : entries) {
                        if (!e.path.via_ris() && e.path.site_id == st.site_id) {
                            interf_mw += db_to_lin(e.power_dbm);
                            break;
                        }
                    }
                }

                const double sinr_db = serving.power_dbm - lin_to_db(interf_mw + noise_mw);
                const double tp = std::min(
                    params.spectral_efficiency * bw_hz * std::log2(1.0 + db_to_lin(sinr_db)),
                    tp_cap);

                int legend = -1;
                if (serving.path.via_ris()) {
                    for (std::size_t i = 0; i < s.ris_units.size(); ++i)
                        if (s.ris_units[i].ris_id == serving.path.ris_id) { legend = ris_legend[i]; break; }
                } else {
                    for (std::size_t i = 0; i < s.sites.size(); ++i)
                        if (s.sites[i].site_id == serving.path.site_id) { legend = site_legend[i]; break; }
                }

                maps.best_server.values[px] = legend;
                maps.best_server.valid[px] = 1;
                maps.rsrp.values[px] = serving.power_dbm;
                maps.rsrp.valid[px] = 1;
                maps.sinr.values[px] = sinr_db;
                maps.sinr.valid[px] = 1;
                maps.throughput.values[px] = tp;
                maps.throughput.valid[px] = 1;
            }
        }
    });

    return maps;
}

MapSet compute_maps(const Scenario& s, const Carrier& band) {
    MapParams params;
    params.ris_constraints = PlacementConstraints::defaults_for(band.center_freq_ghz);
    return compute_maps(s, band, params);
}

DeadZoneSet detect_dead_zones(const RasterMap& rsrp, double cutoff_dbm, double min_area_m2) {
    const Grid& g = rsrp.grid;
    const double px_area = g.resolution_m * g.resolution_m;
    std::vector<std::uint8_t> seen(g.n_pixels(), 0);
    DeadZoneSet out;

    auto is_dead = [&](int r, int c) {
        const std::size_t i = g.index(r, c);
        return rsrp.valid[i] && rsrp.values[i] < cutoff_dbm;
    };

    for (int r0 = 0; r0 < g.height_px; ++r0) {
        for (int c0 = 0; c0 < g.width_px; ++c0) {
            const std::size_t start = g.index(r0, c0);
            if (seen[start] || !is_dead(r0, c0)) continue;

            DeadZone zone;
            std::deque<std::pair<int, int>> queue{{r0, c0}};
            seen[start] = 1;
            double sum_r = 0.0, sum_c = 0.0;
            while (!queue.empty()) {
                auto [r, c] = queue.front();
                queue.pop_front();
                zone.pixels.push_back(g.index(r, c));
                sum_r += r;
                sum_c += c;
                const int nr[4] = {r - 1, r + 1, r, r};
                const int nc[4] = {c, c, c - 1, c + 1};
                for (int k = 0; k < 4; ++k) {
                    if (nr[k] < 0 || nr[k] >= g.height_px || nc[k] < 0 || nc[k] >= g.width_px)
                        continue;
                    const std::size_t ni = g.index(nr[k], nc[k]);
                    if (seen[ni] || !is_dead(nr[k], nc[k])) continue;
                    seen[ni] = 1;
                    queue.push_back({nr[k], nc[k]});
                }
            }
            zone.area_m2 = static_cast<double>(zone.pixels.size()) * px_area;
            if (zone.area_m2 < min_area_m2) continue;
            zone.centroid_row = sum_r / static_cast<double>(zone.pixels.size());
            zone.centroid_col = sum_c / static_cast<double>(zone.pixels.size());
            std::sort(zone.pixels.begin(), zone.pixels.end());
            out.zones.push_back(std::move(zone));
        }
    }

    std::sort(out.zones.begin(), out.zones.end(), [](const DeadZone& a, const DeadZone& b) {
        if (a.area_m2 != b.area_m2) return a.area_m2 > b.area_m2;
        if (a.centroid_row != b.centroid_row) return a.centroid_row < b.centroid_row;
        return a.centroid_col < b.centroid_col;
    });
    for (const auto& z : out.zones)
        out.total_area_m2 += z.area_m2;
    return out;
}

CoverageReport coverage_stats(const MapSet& maps, const ThresholdConfig& thresholds) {
    CoverageReport rep;
    rep.grid = maps.rsrp.grid;
    rep.thresholds = thresholds;

    const std::size_t n_rsrp_classes = thresholds.rsrp_class_bounds_dbm.size() + 1;
    const std::size_t n_sinr_classes = thresholds.sinr_class_bounds_db.size() + 1;
    std::vector<std::size_t> rsrp_counts(n_rsrp_classes, 0), sinr_counts(n_sinr_classes, 0);
    std::size_t n_valid = 0, n_covered = 0;
    std::vector<double> throughputs;
    double tp_sum = 0.0;

    const std::size_t n = maps.rsrp.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!maps.rsrp.valid[i]) continue;
        ++n_valid;
        rsrp_counts[classify(maps.rsrp.values[i], thresholds.rsrp_class_bounds_dbm)]++;
        sinr_counts[classify(maps.sinr.values[i], thresholds.sinr_class_bounds_db)]++;
        if (maps.rsrp.values[i] >= thresholds.deadzone_rsrp_dbm) ++n_covered;
        throughputs.push_back(maps.throughput.values[i]);
        tp_sum += maps.throughput.values[i];
    }
    if (n_valid == 0)
        throw std::invalid_argument("coverage_stats: no valid pixels");

    for (std::size_t k = 0; k < n_rsrp_classes; ++k)
        rep.rsrp_class_fractions.push_back(static_cast<double>(rsrp_counts[k]) / n_valid);
    for (std::size_t k = 0; k < n_sinr_classes; ++k)
        rep.sinr_class_fractions.push_back(static_cast<double>(sinr_counts[k]) / n_valid);
    rep.covered_fraction = static_cast<double>(n_covered) / n_valid;
    rep.mean_throughput_bps = tp_sum / n_valid;

    std::sort(throughputs.begin(), throughputs.end());
    const std::size_t mid = throughputs.size() / 2;
    rep.median_throughput_bps = throughputs.size() % 2
        ? throughputs[mid]
        : 0.5 * (throughputs[mid - 1] + throughputs[mid]);

    std::vector<double> sorted_sinr;
    sorted_sinr.reserve(n_valid);
    for (std::size_t i = 0; i < n; ++i)
        if (maps.sinr.valid[i]) sorted_sinr.push_back(maps.sinr.values[i]);
    std::sort(sorted_sinr.begin(), sorted_sinr.end());
    for (int x = -10; x <= 40; ++x) {
        rep.sinr_cdf_db.push_back(x);
        const auto it = std::upper_bound(sorted_sinr.begin(), sorted_sinr.end(), static_cast<double>(x));
        rep.sinr_cdf_fraction.push_back(
            static_cast<double>(it - sorted_sinr.begin()) / static_cast<double>(n_valid));
    }
    return rep;
}

DeltaReport compare(const CoverageReport& before, const DeadZoneSet& before_zones,
                    const CoverageReport& after, const DeadZoneSet& after_zones) {
    if (!(before.grid == after.grid))
        throw std::invalid_argument("compare: grid mismatch");
    if (!(before.thresholds == after.thresholds))
        throw std::invalid_argument("compare: thresholds mismatch");

    auto rel_pct = [](double b, double a) { return (a - b) / std::max(b, 1e-9) * 100.0; };

    DeltaReport d;
    d.before = before;
    d.after = after;
    d.before_dead_zone_m2 = before_zones.total_area_m2;
    d.after_dead_zone_m2 = after_zones.total_area_m2;
    for (std::size_t k = 0; k < before.rsrp_class_fractions.size(); ++k)
        d.rsrp_class_rel_change_pct.push_back(
            rel_pct(before.rsrp_class_fractions[k], after.rsrp_class_fractions[k]));
    for (std::size_t k = 0; k < before.sinr_class_fractions.size(); ++k)
        d.sinr_class_rel_change_pct.push_back(
            rel_pct(before.sinr_class_fractions[k], after.sinr_class_fractions[k]));
    d.covered_fraction_rel_change_pct = rel_pct(before.covered_fraction, after.covered_fraction);
    d.dead_zone_area_change_pct = rel_pct(before_zones.total_area_m2, after_zones.total_area_m2);
    return d;
}

} // namespace risplan
