#include "risplan/raster_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <zlib.h>

namespace risplan {

namespace {

void write_grid_header(std::ofstream& out, const RasterMap& map, const std::string& name,
                       const std::string& units, char comment) {
    const Grid& g = map.grid;
    out << comment << " name=" << name << " units=" << units << "\n";
    out << comment << " width_px=" << g.width_px << " height_px=" << g.height_px
        << " resolution_m=" << g.resolution_m << " origin=" << g.origin.x << "," << g.origin.y
        << "\n";
}

std::string fmt_full(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

void save_raster_csv(const RasterMap& map, const std::string& name, const std::string& units,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write raster: " + path);
    write_grid_header(out, map, name, units, '#');
    const Grid& g = map.grid;
    for (int r = 0; r < g.height_px; ++r) {
        for (int c = 0; c < g.width_px; ++c) {
            if (c) out << ',';
            const std::size_t i = g.index(r, c);
            if (map.valid[i])
                out << fmt_full(map.values[i]);
            else
                out << "NA";
        }
        out << '\n';
    }
}

RasterMap load_raster_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open raster: " + path);
    Grid g;
    std::string line;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string tok;
            while (ls >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "width_px") g.width_px = std::stoi(val);
                else if (key == "height_px") g.height_px = std::stoi(val);
                else if (key == "resolution_m") g.resolution_m = std::stod(val);
                else if (key == "origin") {
                    auto comma = val.find(',');
                    g.origin = {std::stod(val.substr(0, comma)), std::stod(val.substr(comma + 1))};
                }
            }
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            if (cell == "NA") {
                values.push_back(0.0);
                valid.push_back(0);
            } else {
                values.push_back(std::stod(cell));
                valid.push_back(1);
            }
        }
    }
    if (g.width_px <= 0 || g.height_px <= 0 || values.size() != g.n_pixels())
        throw std::runtime_error(path + ": malformed raster CSV");
    RasterMap map(g);
    map.values = std::move(values);
    map.valid = std::move(valid);
    return map;
}

void save_raster_pgm(const RasterMap& map, const std::string& name, const std::string& units,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write raster: " + path);

    double vmin = 0.0, vmax = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        if (!map.valid[i]) continue;
        if (!any || map.values[i] < vmin) vmin = map.values[i];
        if (!any || map.values[i] > vmax) vmax = map.values[i];
        any = true;
    }
    const double scale = vmax > vmin ? (vmax - vmin) / 65534.0 : 0.0;

    out << "P2\n";
    write_grid_header(out, map, name, units, '#');
    out << "# affine: value = " << fmt_full(vmin) << " + (q-1)*" << fmt_full(scale)
        << "; q=0 means invalid\n";
    out << map.grid.width_px << " " << map.grid.height_px << "\n65535\n";
    const Grid& g = map.grid;
    for (int r = 0; r < g.height_px; ++r) {
        for (int c = 0; c < g.width_px; ++c) {
            if (c) out << ' ';
            const std::size_t i = g.index(r, c);
            if (!map.valid[i]) {
                out << 0;
            } else if (scale == 0.0) {
                out << 1;
            } else {
                const long q = 1 + std::lround((map.values[i] - vmin) / scale);
                out << std::min(65535l, std::max(1l, q));
            }
        }
        out << '\n';
    }
}

namespace {

struct Rgb {
    std::uint8_t r, g, b;
};

// Class palette, best class first: dark blue / green / yellow / red.
constexpr Rgb kClassPalette[4] = {{26, 60, 160}, {60, 170, 60}, {235, 200, 40}, {200, 40, 40}};
constexpr Rgb kInvalidColor{64, 64, 64};

void png_write_chunk(std::ofstream& out, const char type[4], const std::string& payload) {
    auto put_u32 = [&](std::uint32_t v) {
        char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 8), static_cast<char>(v)};
        out.write(b, 4);
    };
    put_u32(static_cast<std::uint32_t>(payload.size()));
    std::string data(type, 4);
    data += payload;
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    const auto crc = crc32(0, reinterpret_cast<const Bytef*>(data.data()),
                           static_cast<uInt>(data.size()));
    put_u32(static_cast<std::uint32_t>(crc));
}

} // namespace

void save_raster_png(const RasterMap& map, const std::vector<double>& class_bounds,
                     const std::string& path) {
    const Grid& g = map.grid;
    const int w = g.width_px, h = g.height_px;

    double vmin = 0.0, vmax = 0.0;
    bool any = false;
    if (class_bounds.empty()) {
        for (std::size_t i = 0; i < map.values.size(); ++i) {
            if (!map.valid[i]) continue;
            if (!any || map.values[i] < vmin) vmin = map.values[i];
            if (!any || map.values[i] > vmax) vmax = map.values[i];
            any = true;
        }
    }

    // Filter byte 0 per scanline, 8-bit RGB.
    std::string raw;
    raw.reserve(static_cast<std::size_t>(h) * (1 + 3 * w));
    for (int r = 0; r < h; ++r) {
        raw.push_back('\0');
        for (int c = 0; c < w; ++c) {
            const std::size_t i = g.index(r, c);
            Rgb px = kInvalidColor;
            if (map.valid[i]) {
                if (!class_bounds.empty()) {
                    px = kClassPalette[std::min(3, classify(map.values[i], class_bounds))];
                } else {
                    double t = vmax > vmin ? (map.values[i] - vmin) / (vmax - vmin) : 0.5;
                    const auto v = static_cast<std::uint8_t>(std::lround(255.0 * t));
                    px = {v, v, v};
                }
            }
            raw.push_back(static_cast<char>(px.r));
            raw.push_back(static_cast<char>(px.g));
            raw.push_back(static_cast<char>(px.b));
        }
    }

    uLongf comp_len = compressBound(static_cast<uLong>(raw.size()));
    std::string compressed(comp_len, '\0');
    if (compress2(reinterpret_cast<Bytef*>(compressed.data()), &comp_len,
                  reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                  6) != Z_OK)
        throw std::runtime_error("png: deflate failed");
    compressed.resize(comp_len);

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write raster: " + path);
    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    out.write(reinterpret_cast<const char*>(sig), 8);

    std::string ihdr;
    auto push_u32 = [&](std::uint32_t v) {
        ihdr.push_back(static_cast<char>(v >> 24));
        ihdr.push_back(static_cast<char>(v >> 16));
        ihdr.push_back(static_cast<char>(v >> 8));
        ihdr.push_back(static_cast<char>(v));
    };
    push_u32(static_cast<std::uint32_t>(w));
    push_u32(static_cast<std::uint32_t>(h));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(2);  // truecolor
    ihdr.push_back(0);  // deflate
    ihdr.push_back(0);  // filter method
    ihdr.push_back(0);  // no interlace
    png_write_chunk(out, "IHDR", ihdr);
    png_write_chunk(out, "IDAT", compressed);
    png_write_chunk(out, "IEND", "");
}

} // namespace risplan
