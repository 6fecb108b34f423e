#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "risplan/geometry.hpp"

namespace risplan {

// Planar raster geometry. The origin is the south-west corner in world
// meters; row 0 is the northernmost row (rasters are stored north-up).
struct Grid {
    int width_px{0};
    int height_px{0};
    double resolution_m{0.0};
    Vec2 origin{0.0, 0.0};

    bool operator==(const Grid& o) const {
        return width_px == o.width_px && height_px == o.height_px &&
               resolution_m == o.resolution_m && origin == o.origin;
    }

    std::size_t n_pixels() const {
        return static_cast<std::size_t>(width_px) * static_cast<std::size_t>(height_px);
    }

    double extent_x_m() const { return width_px * resolution_m; }
    double extent_y_m() const { return height_px * resolution_m; }
    double area_m2() const { return extent_x_m() * extent_y_m(); }

    bool contains(const Vec2& p) const {
        return p.x >= origin.x && p.x < origin.x + extent_x_m() &&
               p.y >= origin.y && p.y < origin.y + extent_y_m();
    }

    Vec2 pixel_center(int row, int col) const {
        return {origin.x + (col + 0.5) * resolution_m,
                origin.y + (height_px - row - 0.5) * resolution_m};
    }

    // Pixel containing a world point; point must be inside the grid.
    void pixel_of(const Vec2& p, int& row, int& col) const {
        col = static_cast<int>((p.x - origin.x) / resolution_m);
        const int gy = static_cast<int>((p.y - origin.y) / resolution_m);
        row = height_px - 1 - gy;
        if (col < 0) col = 0;
        if (col >= width_px) col = width_px - 1;
        if (row < 0) row = 0;
        if (row >= height_px) row = height_px - 1;
    }

    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * width_px + col;
    }
};

// Per-pixel building heights in meters; 0 means open street.
struct ClutterGrid {
    Grid grid;
    std::vector<float> height_m;

    float at(int row, int col) const { return height_m[grid.index(row, col)]; }
    bool is_street(int row, int col) const { return at(row, col) <= 0.0f; }
};

// Scalar field over a grid with a validity mask (building pixels are
// invalid and excluded from every statistic).
struct RasterMap {
    Grid grid;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;

    RasterMap() = default;
    explicit RasterMap(const Grid& g, double fill = 0.0)
        : grid(g), values(g.n_pixels(), fill), valid(g.n_pixels(), 0) {}

    double at(int row, int col) const { return values[grid.index(row, col)]; }
    bool is_valid(int row, int col) const { return valid[grid.index(row, col)] != 0; }

    std::size_t valid_count() const {
        std::size_t n = 0;
        for (auto v : valid) n += v != 0;
        return n;
    }
};

} // namespace risplan
