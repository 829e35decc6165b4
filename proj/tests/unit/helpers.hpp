#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "contactgeom/ambient.hpp"

namespace testing_support {

using contactgeom::UnitSpherePoint;
using contactgeom::Vec4;

inline UnitSpherePoint random_point(std::mt19937& rng) {
  std::normal_distribution<double> g;
  return UnitSpherePoint::normalized(Vec4(g(rng), g(rng), g(rng), g(rng)));
}

/// Unit vector tangent to S^3 at z.
inline Vec4 random_tangent(const UnitSpherePoint& z, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vec4 v(g(rng), g(rng), g(rng), g(rng));
  v -= v.dot(z.vec()) * z.vec();
  return v.normalized();
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("contactgeom_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testing_support
