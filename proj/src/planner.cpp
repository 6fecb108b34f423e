#include "risplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "risplan/parallel.hpp"

namespace risplan {

namespace {

constexpr double kHexAreaFactor = 2.598076211353316; // 3*sqrt(3)/2

// Exact squared Euclidean distance transform (per-axis lower envelope of
// parabolas), distances in pixels to the nearest seed pixel.
std::vector<double> squared_edt(const Grid& g, const std::vector<std::uint8_t>& seed) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const int w = g.width_px, h = g.height_px;
    std::vector<double> dist(g.n_pixels());

    auto transform_1d = [](const std::vector<double>& f, std::vector<double>& d) {
        const int n = static_cast<int>(f.size());
        std::vector<int> v(n);
        std::vector<double> z(n + 1);
        int k = 0;
        v[0] = 0;
        z[0] = -kInf;
        z[1] = kInf;
        for (int q = 1; q < n; ++q) {
            if (f[q] == kInf) continue;
            if (f[v[0]] == kInf) {
                v[0] = q;
                continue;
            }
            double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            while (k > 0 && s <= z[k]) {
                --k;
                s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            }
            ++k;
            v[k] = q;
            z[k] = s;
            z[k + 1] = kInf;
        }
        k = 0;
        for (int q = 0; q < n; ++q) {
            if (f[v[0]] == kInf) {
                d[q] = kInf;
                continue;
            }
            while (z[k + 1] < q) ++k;
            d[q] = (q - v[k]) * (q - v[k]) + f[v[k]];
        }
    };

    std::vector<double> col_f(h), col_d(h);
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < h; ++r)
            col_f[r] = seed[g.index(r, c)] ? 0.0 : kInf;
        transform_1d(col_f, col_d);
        for (int r = 0; r < h; ++r)
            dist[g.index(r, c)] = col_d[r];
    }
    std::vector<double> row_f(w), row_d(w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c)
            row_f[c] = dist[g.index(r, c)];
        transform_1d(row_f, row_d);
        for (int c = 0; c < w; ++c)
            dist[g.index(r, c)] = row_d[c];
    }
    return dist;
}

std::vector<std::uint8_t> dead_mask(const Grid& g, const DeadZoneSet& dz) {
    std::vector<std::uint8_t> mask(g.n_pixels(), 0);
    for (const auto& z : dz.zones)
        for (std::size_t px : z.pixels)
            mask[px] = 1;
    return mask;
}

} // namespace

int estimate_min_ris(double area_m2, double cell_radius_m) {
    if (!(area_m2 > 0.0) || !(cell_radius_m > 0.0))
        throw std::invalid_argument("estimate_min_ris: area and radius must be > 0");
    return static_cast<int>(std::ceil(area_m2 / (kHexAreaFactor * cell_radius_m * cell_radius_m)));
}

std::vector<RisCandidate> generate_candidates(const Scenario& s, const DeadZoneSet& dz,
                                              const PlacementConstraints& c, const Carrier& band) {
    const Grid& g = s.clutter.grid;
    std::vector<RisCandidate> out;
    if (dz.zones.empty()) return out;

    const auto dist2 = squared_edt(g, dead_mask(g, dz));
    const double reach_px = c.d_ris_ue_m.max / g.resolution_m;
    const double reach2 = reach_px * reach_px;

    // Facade orientations scanned N, E, S, W; a building neighbor on that
    // side yields a candidate whose normal points the opposite way (into
    // the street).
    struct Dir {
        int dr, dc;
        double normal_az;
    };
    static constexpr Dir kDirs[4] = {
        {-1, 0, 180.0}, // building to the north -> facade faces south
        {0, 1, 270.0},  // building to the east  -> facade faces west
        {1, 0, 0.0},    // building to the south -> facade faces north
        {0, -1, 90.0},  // building to the west  -> facade faces east
    };

    std::vector<std::size_t> band_sites;
    for (std::size_t i = 0; i < s.sites.size(); ++i)
        if (s.sites[i].carrier == band.band_id) band_sites.push_back(i);
    std::sort(band_sites.begin(), band_sites.end(), [&](std::size_t a, std::size_t b) {
        return s.sites[a].site_id < s.sites[b].site_id;
    });

    for (int r = 0; r < g.height_px; ++r) {
        for (int col = 0; col < g.width_px; ++col) {
            if (!s.clutter.is_street(r, col)) continue;
            if (!(dist2[g.index(r, col)] <= reach2)) continue;
            const Vec2 pos = g.pixel_center(r, col);
            for (const Dir& d : kDirs) {
                const int nr = r + d.dr, nc = col + d.dc;
                if (nr < 0 || nr >= g.height_px || nc < 0 || nc >= g.width_px) continue;
                if (s.clutter.is_street(nr, nc)) continue;

                RisUnit probe;
                probe.position = pos;
                probe.height_m = c.ris_height_m;
                probe.normal_azimuth_deg = d.normal_az;

                // Nearest donor passing distance, incidence and LOS gates.
                const Site* donor = nullptr;
                double donor_d = 0.0;
                for (std::size_t i : band_sites) {
                    const Site& st = s.sites[i];
                    const double dtx = dist3d(st.position, st.height_m, pos, c.ris_height_m);
                    if (!c.d_bs_ris_m.contains(dtx)) continue;
                    if (!c.incidence_deg.contains(incidence_angle(st, probe))) continue;
                    if (!los_check(s.clutter, {st.position, st.height_m}, {pos, c.ris_height_m}))
                        continue;
                    if (!donor || dtx < donor_d) {
                        donor = &st;
                        donor_d = dtx;
                    }
                }
                if (!donor) continue;

                RisCandidate cand;
                cand.row = r;
                cand.col = col;
                cand.position = pos;
                cand.normal_azimuth_deg = d.normal_az;
                cand.donor_site = donor->site_id;
                out.push_back(std::move(cand));
            }
        }
    }
    return out;
}

RisUnit candidate_to_unit(const RisCandidate& cand, const PlacementConstraints& c,
                          const std::string& ris_id) {
    RisUnit u;
    u.ris_id = ris_id;
    u.position = cand.position;
    u.height_m = c.ris_height_m;
    u.normal_azimuth_deg = cand.normal_azimuth_deg;
    u.mode = c.mode;
    u.beta_r = c.mode == RisMode::ReflectOnly ? 1.0 : c.beta_r;
    u.gain_db = c.ris_gain_db;
    u.reflection_loss_db = c.ris_reflection_loss_db;
    u.donor_site = cand.donor_site;
    return u;
}

std::vector<std::size_t> candidate_cover_set(const Scenario& s, const RisCandidate& cand,
                                             const DeadZoneSet& dz, double cutoff_dbm,
                                             const PlacementConstraints& c) {
    const Grid& g = s.clutter.grid;
    const RisUnit unit = candidate_to_unit(cand, c, "probe");
    const double reach2 =
        (c.d_ris_ue_m.max + g.resolution_m) * (c.d_ris_ue_m.max + g.resolution_m);

    std::vector<std::size_t> covered;
    for (const auto& zone : dz.zones) {
        for (std::size_t px : zone.pixels) {
            const int r = static_cast<int>(px) / g.width_px;
            const int col = static_cast<int>(px) % g.width_px;
            const Vec2 p = g.pixel_center(r, col);
            const Vec2 dvec = p - cand.position;
            if (dot(dvec, dvec) > reach2) continue;
            if (!ris_feasible(s, unit, r, col, c)) continue;
            if (ris_rx_power(s, unit, r, col) >= cutoff_dbm)
                covered.push_back(px);
        }
    }
    std::sort(covered.begin(), covered.end());
    return covered;
}

int score_candidate(const Scenario& s, const RisCandidate& cand, const DeadZoneSet& dz,
                    double cutoff_dbm, const PlacementConstraints& c) {
    return static_cast<int>(candidate_cover_set(s, cand, dz, cutoff_dbm, c).size());
}

PlacementResult greedy_place(const Scenario& s, const DeadZoneSet& dz,
                             const PlacementConstraints& c, const RasterMap& before_rsrp,
                             const std::vector<RisCandidate>& candidates, int jobs) {
    const Grid& g = s.clutter.grid;
    const double px_area = g.resolution_m * g.resolution_m;
    const double cutoff = s.thresholds.deadzone_rsrp_dbm;

    PlacementResult result;
    std::size_t n_valid = 0, n_uncovered = 0;
    for (std::size_t i = 0; i < before_rsrp.values.size(); ++i) {
        if (!before_rsrp.valid[i]) continue;
        ++n_valid;
        if (before_rsrp.values[i] < cutoff) ++n_uncovered;
    }
    if (n_valid == 0)
        throw std::invalid_argument("greedy_place: no valid pixels");
    result.initial_coverage_prob = static_cast<double>(n_valid - n_uncovered) / n_valid;
    result.achieved_coverage_prob = result.initial_coverage_prob;

    if (candidates.empty() || dz.zones.empty())
        return result;

    // Cover sets against the initial dead set are invariant across steps;
    // re-scoring is then a recount of still-dead members.
    std::vector<std::vector<std::size_t>> covers(candidates.size());
    parallel_for(candidates.size(), jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            covers[i] = candidate_cover_set(s, candidates[i], dz, cutoff, c);
    });

    std::vector<std::uint8_t> alive = dead_mask(g, dz);
    std::vector<std::uint8_t> used(candidates.size(), 0);
    std::size_t newly_covered_total = 0;

    auto existing_ids = [&](const std::string& id) {
        if (s.find_ris(id)) return true;
        for (const auto& u : result.placed)
            if (u.ris_id == id) return true;
        return false;
    };

    while (static_cast<int>(result.placed.size()) < c.max_ris &&
           result.achieved_coverage_prob < c.target_coverage_prob) {
        std::size_t best = candidates.size();
        std::size_t best_score = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            std::size_t score = 0;
            for (std::size_t px : covers[i])
                score += alive[px];
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best == candidates.size() || best_score == 0)
            break;

        used[best] = 1;
        std::string id;
        for (int k = static_cast<int>(result.placed.size()) + 1;; ++k) {
            id = "R" + std::string(k < 10 ? "0" : "") + std::to_string(k);
            if (!existing_ids(id)) break;
        }
        result.placed.push_back(candidate_to_unit(candidates[best], c, id));
        result.marginal_gain_m2.push_back(static_cast<double>(best_score) * px_area);

        for (std::size_t px : covers[best]) {
            if (alive[px]) {
                alive[px] = 0;
                ++newly_covered_total;
            }
        }
        result.achieved_coverage_prob =
            static_cast<double>(n_valid - n_uncovered + newly_covered_total) / n_valid;
    }
    return result;
}

PlacementResult greedy_place(const Scenario& s, const DeadZoneSet& dz,
                             const PlacementConstraints& c, const Carrier& band,
                             const RasterMap& before_rsrp, int jobs) {
    return greedy_place(s, dz, c, before_rsrp, generate_candidates(s, dz, c, band), jobs);
}

PipelineResult run_pipeline(const Scenario& s, const Carrier& band,
                            const PlacementConstraints& c, const PipelineOptions& opts) {
    const Grid& g = s.clutter.grid;
    const double px_area = g.resolution_m * g.resolution_m;
    const double min_area =
        opts.dead_zone_min_area_m2 < 0.0 ? 4.0 * px_area : opts.dead_zone_min_area_m2;

    MapParams params;
    params.ris_constraints = c;
    params.jobs = opts.jobs;

    PipelineResult out;
    out.before_maps = compute_maps(s, band, params);
    out.before_report = coverage_stats(out.before_maps, s.thresholds);
    out.before_zones = detect_dead_zones(out.before_maps.rsrp, s.thresholds.deadzone_rsrp_dbm, min_area);

    const auto candidates = generate_candidates(s, out.before_zones, c, band);
    out.n_candidates = candidates.size();
    out.placement =
        greedy_place(s, out.before_zones, c, out.before_maps.rsrp, candidates, opts.jobs);

    if (out.placement.placed.empty()) {
        out.after_maps = out.before_maps;
        out.after_report = out.before_report;
        out.after_zones = out.before_zones;
    } else {
        Scenario with_ris = s;
        for (const auto& u : out.placement.placed)
            with_ris.ris_units.push_back(u);
        out.after_maps = compute_maps(with_ris, band, params);
        out.after_report = coverage_stats(out.after_maps, s.thresholds);
        out.after_zones =
            detect_dead_zones(out.after_maps.rsrp, s.thresholds.deadzone_rsrp_dbm, min_area);
    }
    out.delta = compare(out.before_report, out.before_zones, out.after_report, out.after_zones);
    return out;
}

} // namespace risplan
