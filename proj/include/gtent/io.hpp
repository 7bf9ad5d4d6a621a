#pragma once

#include <filesystem>

#include "gtent/grid.hpp"
#include "gtent/measure.hpp"

namespace gtent::io {

// Binary layout, little-endian: "GTNT", u32 version, u32 flags (bit 0:
// continuous intent), u32 dim, per axis {f64 lo, f64 hi, u64 count},
// f64 t_min, f64 t_max, u64 nt, then size() f64 values, spatial-major.
void write_binary(const GridFunction& f, const std::filesystem::path& path);
GridFunction read_binary(const std::filesystem::path& path);

// CSV with header y,t,value (or y0,y1,t,value); the grid is rebuilt from the
// node coordinates and must be uniform in y and log-uniform in t.
void write_csv(const GridFunction& f, const std::filesystem::path& path);
GridFunction read_csv(const std::filesystem::path& path);

// Dispatches on the extension: .csv or anything else as binary.
GridFunction read_function(const std::filesystem::path& path);
void write_function(const GridFunction& f, const std::filesystem::path& path);

void write_csv(const SpatialFunction& g, const std::filesystem::path& path, const char* column = "value");
SpatialFunction read_spatial_csv(GridPtr grid, const std::filesystem::path& path);

void write_csv(const RegionMask& m, const std::filesystem::path& path);
RegionMask read_mask_csv(GridPtr grid, MaskKind kind, const std::filesystem::path& path);

void write_csv(const DiscreteMeasure& mu, int dim, const std::filesystem::path& path);
DiscreteMeasure read_measure_csv(const std::filesystem::path& path);

}  // namespace gtent::io
