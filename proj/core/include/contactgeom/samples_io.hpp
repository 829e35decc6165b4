#pragma once

// Plain-text sample files.
//
//   S3SAMPLES v1 nu nv topo_u topo_v u0 u1 v0 v1
//   u v x1 y1 x2 y2        (nu * nv rows, i-major)

#include <filesystem>
#include <iosfwd>

#include "contactgeom/surface.hpp"

namespace contactgeom {

void save_samples(const SurfaceGrid& grid, std::ostream& out);
void save_samples(const SurfaceGrid& grid, const std::filesystem::path& path);

/// Reads a sample file, or a fields.csv written by `analyze` (topology is then
/// inferred: an axis is periodic when its span plus one spacing is 2 pi).
/// The grid carries no stored partials. Throws ParseError with the line number
/// on malformed input and OffSphere naming the node when a point is more than
/// 1e-6 from unit norm.
SurfaceGrid load_samples(std::istream& in, const std::string& label = "samples");
SurfaceGrid load_samples(const std::filesystem::path& path);

}  // namespace contactgeom
