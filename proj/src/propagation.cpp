#include "risplan/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risplan {

namespace {

struct UrbanCoefficients {
    // LOS:  a + b*log10(d3d) + c*log10(f_ghz)
    double los_a, los_b, los_c;
    // NLOS: a + b*log10(d3d) + c*log10(f_ghz) - d*(h_rx - 1.5)
    double nlos_a, nlos_b, nlos_c, nlos_d;
};

// Macro coefficients below 10 GHz, street-canyon micro above.
constexpr UrbanCoefficients kMacro{28.0, 22.0, 20.0, 13.54, 39.08, 20.0, 0.6};
constexpr UrbanCoefficients kMicro{32.4, 21.0, 20.0, 22.4, 35.3, 21.3, 0.3};

constexpr double kModelMinDistanceM = 10.0;

} // namespace

double fspl(double d_m, double f_ghz) {
    const double d = std::max(d_m, 1.0);
    return 32.45 + 20.0 * std::log10(f_ghz) + 20.0 * std::log10(d);
}

double pl_urban(const LinkGeometry& geom, bool los, const Carrier& band) {
    const double f = band.center_freq_ghz;
    if (geom.d3d_m < kModelMinDistanceM)
        return fspl(geom.d3d_m, f);
    const UrbanCoefficients& k = f < 10.0 ? kMacro : kMicro;
    const double log_d = std::log10(geom.d3d_m);
    const double log_f = std::log10(f);
    const double pl_los = k.los_a + k.los_b * log_d + k.los_c * log_f;
    if (los)
        return pl_los;
    const double pl_nlos = k.nlos_a + k.nlos_b * log_d + k.nlos_c * log_f -
                           k.nlos_d * (geom.rx_height_m - 1.5);
    return std::max(pl_los, pl_nlos);
}

bool los_check(const ClutterGrid& clutter, const Endpoint3& a, const Endpoint3& b) {
    const Grid& g = clutter.grid;
    if (!g.contains(a.pos) || !g.contains(b.pos))
        throw std::invalid_argument("los_check: endpoint outside grid");

    const Vec2 d2 = b.pos - a.pos;
    const double seg_len2 = dot(d2, d2);

    // Line height at the along-segment position nearest the pixel center.
    auto cell_clear = [&](int row, int col) {
        const float h = clutter.at(row, col);
        if (h <= 0.0f) return true;
        double line_h;
        if (seg_len2 > 0.0) {
            const double t = std::clamp(dot(g.pixel_center(row, col) - a.pos, d2) / seg_len2, 0.0, 1.0);
            line_h = a.height_m + t * (b.height_m - a.height_m);
        } else {
            line_h = std::min(a.height_m, b.height_m);
        }
        return static_cast<double>(h) < line_h;
    };

    // Grid-space coordinates: gx in [0, W], gy measured from the south edge.
    const double res = g.resolution_m;
    double gx = (a.pos.x - g.origin.x) / res;
    double gy = (a.pos.y - g.origin.y) / res;
    const double ex = (b.pos.x - g.origin.x) / res;
    const double ey = (b.pos.y - g.origin.y) / res;
    const double dx = ex - gx;
    const double dy = ey - gy;

    auto visit = [&](int cx, int cy) {
        // cy counts from the south; rasters index from the north.
        if (cx < 0 || cx >= g.width_px || cy < 0 || cy >= g.height_px) return true;
        return cell_clear(g.height_px - 1 - cy, cx);
    };

    int cx = std::min(static_cast<int>(gx), g.width_px - 1);
    int cy = std::min(static_cast<int>(gy), g.height_px - 1);
    const int end_cx = std::min(static_cast<int>(ex), g.width_px - 1);
    const int end_cy = std::min(static_cast<int>(ey), g.height_px - 1);

    if (!visit(cx, cy)) return false;

    const int step_x = dx > 0.0 ? 1 : -1;
    const int step_y = dy > 0.0 ? 1 : -1;
    const double inv_dx = dx != 0.0 ? 1.0 / dx : 0.0;
    const double inv_dy = dy != 0.0 ? 1.0 / dy : 0.0;
    // Parameter t at which the ray crosses the next cell boundary per axis.
    double t_max_x = dx != 0.0
        ? ((dx > 0.0 ? cx + 1.0 : cx) - gx) * inv_dx
        : std::numeric_limits<double>::infinity();
    double t_max_y = dy != 0.0
        ? ((dy > 0.0 ? cy + 1.0 : cy) - gy) * inv_dy
        : std::numeric_limits<double>::infinity();
    const double t_delta_x = dx != 0.0 ? std::abs(inv_dx) : 0.0;
    const double t_delta_y = dy != 0.0 ? std::abs(inv_dy) : 0.0;
    constexpr double kCornerEps = 1e-12;

    while (cx != end_cx || cy != end_cy) {
        if (t_max_x > 1.0 && t_max_y > 1.0) {
            // Endpoint on a cell boundary; jump straight to the end cell.
            return visit(end_cx, end_cy);
        }
        if (std::abs(t_max_x - t_max_y) <= kCornerEps) {
            // Corner crossing: both cells sharing the corner count as crossed.
            if (!visit(cx + step_x, cy)) return false;
            if (!visit(cx, cy + step_y)) return false;
            cx += step_x;
            cy += step_y;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        } else if (t_max_x < t_max_y) {
            cx += step_x;
            t_max_x += t_delta_x;
        } else {
            cy += step_y;
            t_max_y += t_delta_y;
        }
        if (!visit(cx, cy)) return false;
    }
    return true;
}

PathlossSample site_pathloss(const Scenario& s, const Site& site, int row, int col) {
    const Grid& g = s.clutter.grid;
    const Vec2 px = g.pixel_center(row, col);
    const Carrier* band = s.find_carrier(site.carrier);
    if (!band)
        throw std::invalid_argument("site_pathloss: site carrier not found: " + site.carrier);

    PathlossSample out;
    out.geometry.d2d_m = distance(site.position, px);
    out.geometry.d3d_m = dist3d(site.position, site.height_m, px, s.ue.height_m);
    out.geometry.tx_height_m = site.height_m;
    out.geometry.rx_height_m = s.ue.height_m;
    out.geometry.frequency_ghz = band->center_freq_ghz;
    out.los = los_check(s.clutter, {site.position, site.height_m}, {px, s.ue.height_m});
    out.pl_db = pl_urban(out.geometry, out.los, *band);
    return out;
}

} // namespace risplan
