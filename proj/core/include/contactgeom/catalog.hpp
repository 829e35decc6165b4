#pragma once

// Built-in surfaces with closed-form partials and ground truth.

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "contactgeom/calculus.hpp"
#include "contactgeom/surface.hpp"

namespace contactgeom {

struct ParamSpec {
  std::string name;
  double default_value = 0.0;
  std::string description;
};

using ParamMap = std::map<std::string, double>;
using FieldTruth = std::function<double(double u, double v)>;

/// Closed-form values where they exist; empty functions mean "unknown".
/// `beta` follows the reported [0, pi] convention, `signed_beta` the branch
/// used by the structure equations, both under the default e1 gauge.
struct GroundTruth {
  FieldTruth beta;
  FieldTruth signed_beta;
  FieldTruth gaussian_curvature;
  FieldTruth mean_curvature;
  std::function<Mat2(double u, double v)> shape_operator;
  std::string notes;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  ParamMap values;  // parameter values this entry was built with
  Immersion immersion;
  GridSpec recommended;
  GroundTruth truth;

  /// Samples on the recommended layout with the given node counts.
  SurfaceGrid sample(int nu, int nv) const;
  std::string label() const;
};

/// (sqrt2/2)(e^{iu}, e^{iv}) on [0, 2pi)^2.
CatalogEntry clifford();

/// The great sphere y2 = 0 in the chart
/// (theta, phi) -> (sin t cos p, sin t sin p, cos t, 0), theta in [0.2, pi - 0.2].
CatalogEntry geodesic_sphere();

/// (cos r e^{iu}, sin r e^{iv}); throws RangeError unless 0.05 < r < pi/2 - 0.05.
CatalogEntry r_torus(double r);

inline constexpr double kMaxPerturbation = 0.2;

/// Displaces the base surface along its e3 by eps sin(m u) sin(n v) and
/// renormalizes. Partials of the result are sixth-order central differences
/// of the new point map. eps = 0 returns the base entry unchanged. Throws
/// AmplitudeTooLarge for |eps| >= 0.2, InvalidArgument for a non-compact base.
CatalogEntry perturb(const CatalogEntry& base, int m, int n, double eps);

std::vector<std::string> catalog_names();

/// Builds a named entry. `clifford` and `rtorus` accept eps, m, n for a
/// perturbation; `rtorus` also takes r. Unknown names or parameters throw
/// InvalidArgument.
CatalogEntry make_entry(std::string_view name, const ParamMap& params = {});

/// Largest deviation between the entry's first partials and central
/// differences of its point map over an n x n sample of the recommended domain.
double partials_deviation(const CatalogEntry& entry, int n = 16);

}  // namespace contactgeom
