#include "risplan/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace risplan {

namespace {

// Axis coordinate -> block index, or -1 inside a street band.
int block_index(double coord, double block_m, double street_m) {
    const double period = block_m + street_m;
    const double u = coord - std::floor(coord / period) * period;
    if (u < street_m) return -1;
    return static_cast<int>(std::floor(coord / period));
}

} // namespace

Scenario generate_synthetic(std::uint64_t seed, const SyntheticSpec& spec) {
    if (spec.width_px < 1 || spec.height_px < 1 || spec.resolution_m <= 0.0)
        throw std::invalid_argument("synthetic spec: grid dimensions must be positive");
    if (spec.block_m <= 0.0 || spec.street_m < 0.0)
        throw std::invalid_argument("synthetic spec: block/street sizes must be positive");
    if (spec.height_min_m < 0 || spec.height_max_m < spec.height_min_m)
        throw std::invalid_argument("synthetic spec: bad height range");
    if (spec.n_sites < 1)
        throw std::invalid_argument("synthetic spec: n_sites must be >= 1");

    Scenario s;
    Grid& g = s.clutter.grid;
    g.width_px = spec.width_px;
    g.height_px = spec.height_px;
    g.resolution_m = spec.resolution_m;
    g.origin = {0.0, 0.0};

    // Per-block heights drawn in row-major block order so the result is a
    // pure function of (seed, spec) regardless of grid traversal.
    const double period = spec.block_m + spec.street_m;
    const int nbx = static_cast<int>(std::ceil(g.extent_x_m() / period)) + 1;
    const int nby = static_cast<int>(std::ceil(g.extent_y_m() / period)) + 1;
    std::mt19937_64 rng(seed);
    const std::uint64_t span = static_cast<std::uint64_t>(spec.height_max_m - spec.height_min_m) + 1;
    std::vector<int> block_height(static_cast<std::size_t>(nbx) * nby);
    for (auto& h : block_height)
        h = spec.height_min_m + static_cast<int>(rng() % span);

    s.clutter.height_m.resize(g.n_pixels());
    for (int r = 0; r < g.height_px; ++r) {
        for (int c = 0; c < g.width_px; ++c) {
            const Vec2 p = g.pixel_center(r, c);
            const int bx = block_index(p.x - g.origin.x, spec.block_m, spec.street_m);
            const int by = block_index(p.y - g.origin.y, spec.block_m, spec.street_m);
            float h = 0.0f;
            if (bx >= 0 && by >= 0)
                h = static_cast<float>(block_height[static_cast<std::size_t>(by) * nbx + bx]);
            s.clutter.height_m[g.index(r, c)] = h;
        }
    }

    s.carriers.push_back(spec.carrier);

    // Uniform lattice of k*k cell centers; when n_sites < k*k the surplus
    // points nearest the grid center are dropped (ties row-major), keeping
    // the layout edge-heavy. Each kept point snaps to the nearest street
    // pixel center (ties row-major).
    const int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spec.n_sites))));
    struct LatticePoint {
        Vec2 p;
        int order;
        double center_d2;
    };
    std::vector<LatticePoint> pts;
    const Vec2 center{g.origin.x + g.extent_x_m() / 2.0, g.origin.y + g.extent_y_m() / 2.0};
    for (int i = 0; i < k; ++i) {
        for (int jx = 0; jx < k; ++jx) {
            Vec2 p{g.origin.x + (jx + 0.5) * g.extent_x_m() / k,
                   g.origin.y + (k - i - 0.5) * g.extent_y_m() / k};
            const Vec2 d = p - center;
            pts.push_back({p, i * k + jx, dot(d, d)});
        }
    }
    const int n_drop = k * k - spec.n_sites;
    for (int drop = 0; drop < n_drop; ++drop) {
        std::size_t best = pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (best == pts.size() || pts[i].center_d2 < pts[best].center_d2 ||
                (pts[i].center_d2 == pts[best].center_d2 && pts[i].order < pts[best].order))
                best = i;
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(best));
    }

    int id_width = 1;
    for (int n = spec.n_sites; n >= 10; n /= 10) ++id_width;

    std::vector<std::size_t> taken;
    for (std::size_t si = 0; si < pts.size(); ++si) {
        std::size_t best_idx = g.n_pixels();
        double best_d2 = 0.0;
        for (int r = 0; r < g.height_px; ++r) {
            for (int c = 0; c < g.width_px; ++c) {
                if (!s.clutter.is_street(r, c)) continue;
                const std::size_t idx = g.index(r, c);
                bool used = false;
                for (std::size_t t : taken)
                    if (t == idx) { used = true; break; }
                if (used) continue;
                const Vec2 d = g.pixel_center(r, c) - pts[si].p;
                const double d2 = dot(d, d);
                if (best_idx == g.n_pixels() || d2 < best_d2) {
                    best_idx = idx;
                    best_d2 = d2;
                }
            }
        }
        if (best_idx == g.n_pixels())
            throw std::invalid_argument("synthetic spec: not enough street pixels for the sites");
        taken.push_back(best_idx);

        Site st;
        std::string num = std::to_string(si + 1);
        st.site_id = "S" + std::string(id_width - std::min<std::size_t>(id_width, num.size()), '0') + num;
        const int row = static_cast<int>(best_idx) / g.width_px;
        const int col = static_cast<int>(best_idx) % g.width_px;
        st.position = g.pixel_center(row, col);
        st.height_m = spec.site_height_m;
        st.azimuth_deg = 0.0;
        st.tx_power_dbm = spec.site_tx_power_dbm;
        st.antenna_gain_dbi = spec.site_antenna_gain_dbi;
        st.carrier = spec.carrier.band_id;
        s.sites.push_back(std::move(st));
    }

    return s;
}

SyntheticSpec reference_spec_3p5ghz() {
    SyntheticSpec spec;
    spec.width_px = 520;
    spec.height_px = 520;
    spec.resolution_m = 5.0;
    spec.block_m = 45.0;
    spec.street_m = 25.0;
    spec.height_min_m = 0;
    spec.height_max_m = 18;
    spec.n_sites = 8;
    spec.carrier = {"n78", 3.5, 100.0};
    spec.site_height_m = 25.0;
    spec.site_tx_power_dbm = 18.0;
    spec.site_antenna_gain_dbi = 12.0;
    return spec;
}

} // namespace risplan
