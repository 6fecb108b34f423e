#include "risplan/ris_channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risplan {

PlacementConstraints PlacementConstraints::defaults_for(double center_freq_ghz) {
    PlacementConstraints c;
    if (center_freq_ghz < 10.0) {
        c.d_bs_ris_m = {100.0, 200.0};
        c.d_ris_ue_m = {1.0, 300.0};
        c.incidence_deg = {15.0, 45.0};
        c.ris_gain_db = 15.0;
        c.ris_reflection_loss_db = 0.5;
    } else {
        c.d_bs_ris_m = {50.0, 75.0};
        c.d_ris_ue_m = {1.0, 70.0};
        c.incidence_deg = {10.0, 60.0};
        c.ris_gain_db = 26.0;
        c.ris_reflection_loss_db = 2.87;
    }
    c.ris_height_m = 5.0;
    c.mode = RisMode::Star;
    c.beta_r = 0.5;
    return c;
}

const char* to_string(InfeasibleReason r) {
    switch (r) {
        case InfeasibleReason::AngleOutOfRange: return "angle out of range";
        case InfeasibleReason::NoLosBsRis: return "no LOS BS->RIS";
        case InfeasibleReason::NoLosRisUe: return "no LOS RIS->UE";
        case InfeasibleReason::DistanceOutOfRange: return "distance out of range";
        case InfeasibleReason::WrongSide: return "wrong side";
    }
    return "?";
}

double pl_ris_cascade(double pl_br_db, double pl_ru_db) {
    return 10.0 * std::log10(std::pow(10.0, pl_br_db / 10.0) * std::pow(10.0, pl_ru_db / 10.0));
}

double pl_ris_corridor(double dtx_m, double drx_m) {
    return 24.0 * std::log10(dtx_m) + 19.2 * std::log10(drx_m) + 63.22;
}

double incidence_angle(const Site& site, const RisUnit& ris) {
    const Vec2 to_site = site.position - ris.position;
    const double len = norm(to_site);
    if (len < 1e-9)
        throw std::invalid_argument("incidence_angle: site and RIS positions coincide");
    const Vec2 n = azimuth_unit(ris.normal_azimuth_deg);
    const double c = std::clamp(dot(to_site, n) / len, -1.0, 1.0);
    return rad_to_deg(std::acos(c));
}

RisLinkGeometry ris_link_geometry(const Scenario& s, const RisUnit& ris, int row, int col) {
    const Site* donor = s.find_site(ris.donor_site);
    if (!donor)
        throw std::invalid_argument("RIS donor site not found: " + ris.donor_site);
    const Vec2 px = s.clutter.grid.pixel_center(row, col);

    RisLinkGeometry geo;
    geo.dtx_m = dist3d(donor->position, donor->height_m, ris.position, ris.height_m);
    geo.drx_m = dist3d(ris.position, ris.height_m, px, s.ue.height_m);
    geo.incidence_deg = incidence_angle(*donor, ris);
    const Vec2 n = azimuth_unit(ris.normal_azimuth_deg);
    geo.side = dot(px - ris.position, n) >= 0.0 ? RisLinkGeometry::Side::Reflect
                                                : RisLinkGeometry::Side::Transmit;
    return geo;
}

RisFeasibility check_feasibility(const Scenario& s, const RisUnit& ris, int row, int col,
                                 const PlacementConstraints& constraints) {
    const Site* donor = s.find_site(ris.donor_site);
    if (!donor)
        throw std::invalid_argument("RIS donor site not found: " + ris.donor_site);
    const Vec2 px = s.clutter.grid.pixel_center(row, col);
    const RisLinkGeometry geo = ris_link_geometry(s, ris, row, col);

    RisFeasibility out;
    if (!constraints.incidence_deg.contains(geo.incidence_deg))
        out.reasons.push_back(InfeasibleReason::AngleOutOfRange);
    if (!los_check(s.clutter, {donor->position, donor->height_m}, {ris.position, ris.height_m}))
        out.reasons.push_back(InfeasibleReason::NoLosBsRis);
    if (!los_check(s.clutter, {ris.position, ris.height_m}, {px, s.ue.height_m}))
        out.reasons.push_back(InfeasibleReason::NoLosRisUe);
    if (!constraints.d_bs_ris_m.contains(geo.dtx_m) || !constraints.d_ris_ue_m.contains(geo.drx_m))
        out.reasons.push_back(InfeasibleReason::DistanceOutOfRange);
    if (ris.mode == RisMode::ReflectOnly && geo.side == RisLinkGeometry::Side::Transmit)
        out.reasons.push_back(InfeasibleReason::WrongSide);
    out.feasible = out.reasons.empty();
    return out;
}

bool ris_feasible(const Scenario& s, const RisUnit& ris, int row, int col,
                  const PlacementConstraints& constraints) {
    const Site* donor = s.find_site(ris.donor_site);
    if (!donor)
        throw std::invalid_argument("RIS donor site not found: " + ris.donor_site);
    const Vec2 px = s.clutter.grid.pixel_center(row, col);

    const double drx = dist3d(ris.position, ris.height_m, px, s.ue.height_m);
    if (!constraints.d_ris_ue_m.contains(drx)) return false;
    const double dtx = dist3d(donor->position, donor->height_m, ris.position, ris.height_m);
    if (!constraints.d_bs_ris_m.contains(dtx)) return false;
    if (!constraints.incidence_deg.contains(incidence_angle(*donor, ris))) return false;
    if (ris.mode == RisMode::ReflectOnly &&
        dot(px - ris.position, azimuth_unit(ris.normal_azimuth_deg)) < 0.0)
        return false;
    if (!los_check(s.clutter, {ris.position, ris.height_m}, {px, s.ue.height_m})) return false;
    return los_check(s.clutter, {donor->position, donor->height_m}, {ris.position, ris.height_m});
}

double ris_rx_power(const Scenario& s, const RisUnit& ris, int row, int col) {
    const Site* donor = s.find_site(ris.donor_site);
    if (!donor)
        throw std::invalid_argument("RIS donor site not found: " + ris.donor_site);
    const Carrier* band = s.find_carrier(donor->carrier);
    if (!band)
        throw std::invalid_argument("donor carrier not found: " + donor->carrier);

    const Vec2 px = s.clutter.grid.pixel_center(row, col);
    const RisLinkGeometry geo = ris_link_geometry(s, ris, row, col);

    double split_db = 0.0;
    if (geo.side == RisLinkGeometry::Side::Reflect) {
        split_db = ris.mode == RisMode::ReflectOnly ? 0.0 : 10.0 * std::log10(ris.beta_r);
    } else {
        if (ris.mode == RisMode::ReflectOnly)
            throw std::domain_error("transmit-side query against reflect-only RIS " + ris.ris_id);
        split_db = 10.0 * std::log10(1.0 - ris.beta_r);
    }

    double pl_total;
    if (band->center_freq_ghz < 10.0) {
        LinkGeometry br;
        br.d2d_m = distance(donor->position, ris.position);
        br.d3d_m = geo.dtx_m;
        br.tx_height_m = donor->height_m;
        br.rx_height_m = ris.height_m;
        br.frequency_ghz = band->center_freq_ghz;
        const bool los_br =
            los_check(s.clutter, {donor->position, donor->height_m}, {ris.position, ris.height_m});

        LinkGeometry ru;
        ru.d2d_m = distance(ris.position, px);
        ru.d3d_m = geo.drx_m;
        ru.tx_height_m = ris.height_m;
        ru.rx_height_m = s.ue.height_m;
        ru.frequency_ghz = band->center_freq_ghz;
        const bool los_ru = los_check(s.clutter, {ris.position, ris.height_m}, {px, s.ue.height_m});

        pl_total = pl_ris_cascade(pl_urban(br, los_br, *band), pl_urban(ru, los_ru, *band));
    } else {
        pl_total = pl_ris_corridor(std::max(geo.dtx_m, 1.0), std::max(geo.drx_m, 1.0));
    }

    return donor->tx_power_dbm + donor->antenna_gain_dbi + ris.gain_db + split_db -
           ris.reflection_loss_db - pl_total;
}

} // namespace risplan
