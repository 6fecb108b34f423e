#pragma once

#include <string>

#include "risplan/coverage.hpp"

namespace risplan {

// CSV: '#'-prefixed header lines with grid metadata, then row-major values,
// invalid pixels as "NA". Full double precision.
void save_raster_csv(const RasterMap& map, const std::string& name, const std::string& units,
                     const std::string& path);
RasterMap load_raster_csv(const std::string& path);

// PGM (P2), 16-bit quantization with the affine mapping documented in the
// header comment; q = 0 is reserved for invalid pixels.
void save_raster_pgm(const RasterMap& map, const std::string& name, const std::string& units,
                     const std::string& path);

// PNG heatmap. With class bounds given (RSRP/SINR maps) a fixed 4-class
// palette is used; otherwise a grayscale ramp. Invalid pixels are dark gray.
void save_raster_png(const RasterMap& map, const std::vector<double>& class_bounds,
                     const std::string& path);

} // namespace risplan
