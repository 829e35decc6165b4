#pragma once

// Parametric immersions into S^3 sampled on structured grids, and the adapted
// frame (e1, e2, e3) with its contact angle.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contactgeom/ambient.hpp"
#include "contactgeom/grid.hpp"

namespace contactgeom {

using PointMap = std::function<Vec4(double u, double v)>;

enum class PartialsSource { analytic, high_order_difference, grid_difference };

std::string_view to_string(PartialsSource s);

/// A parametrized surface: the point map is required, partial derivatives are
/// optional and must either all be present or all be absent.
struct Immersion {
  PointMap point;
  /// How the partials below were obtained; perturbed surfaces supply
  /// high-order finite differences of the point map instead of closed forms.
  PartialsSource partials_kind = PartialsSource::analytic;
  PointMap du, dv;
  PointMap duu, duv, dvv;

  bool has_first_partials() const { return static_cast<bool>(du) && static_cast<bool>(dv); }
  bool has_second_partials() const {
    return static_cast<bool>(duu) && static_cast<bool>(duv) && static_cast<bool>(dvv);
  }
};

struct GridPartials {
  std::vector<Vec4> du, dv;
  std::vector<Vec4> duu, duv, dvv;  // empty when second partials are unknown
};

struct SurfaceGrid {
  GridSpec spec;
  std::vector<UnitSpherePoint> points;
  std::optional<GridPartials> partials;
  PartialsSource partials_kind = PartialsSource::grid_difference;
  std::string label;

  const UnitSpherePoint& at(int i, int j) const { return points[spec.index(i, j)]; }

  /// Drops stored partials so tangents come from grid differences.
  void drop_partials() {
    partials.reset();
    partials_kind = PartialsSource::grid_difference;
  }
};

/// Points further than this from unit norm are rejected by sample().
inline constexpr double kOffSphereTolerance = 1e-6;

/// Evaluates the immersion on every node and re-normalizes onto S^3.
/// Analytic partials, when supplied, are projected to the tangent space of S^3.
/// Throws GeometryError(OffSphere) when an evaluated point is more than 1e-6
/// away from unit norm, InvalidGrid for a malformed spec.
SurfaceGrid sample(const Immersion& immersion, const GridSpec& spec, std::string label = {});

struct TangentPair {
  Vec4 xu;
  Vec4 xv;
};

inline constexpr double kMinGramDeterminant = 1e-10;

/// Stored analytic partials when present, else fourth-order differences of the
/// point grid; both projected to T_z S^3. Throws DegenerateParametrization if
/// the Gram determinant falls below 1e-10.
TangentPair tangent_pair(const SurfaceGrid& grid, int i, int j);

/// Orthonormal frame adapted to the surface and the contact structure.
///
/// e1 spans TS intersected with the contact plane, e2 completes a positively
/// oriented tangent basis relative to (Xu, Xv), and e3 = e1 x e2 in the
/// orientation of the canonical frame (f1, f2, f3). `beta` is the contact
/// angle arccos <xi, e2> in [0, pi]. `signed_beta` is the angle with
///   e2 = sin(signed_beta) i e1 + cos(signed_beta) xi,
/// which is the smooth branch the structure equations are written in; it
/// agrees with beta wherever <e2, i e1> >= 0.
struct AdaptedFramePoint {
  Vec4 e1;
  Vec4 e2;
  Vec4 e3;
  double beta = 0.0;
  double signed_beta = 0.0;
  bool degenerate = false;

  /// e1 -> -e1 together with e2 -> -e2; e3 is unchanged.
  void flip();
};

/// |<xi, n>| above this marks TS = contact plane.
inline constexpr double kDegenerateContact = 1.0 - 1e-9;

/// Throws GeometryError(DegenerateContact) when the tangent plane coincides
/// with the contact plane. e1 is signed so that <e1, Xu> >= 0.
AdaptedFramePoint adapted_frame(const UnitSpherePoint& z, const Vec4& xu, const Vec4& xv);

/// Per-node frames with a globally consistent e1 sign. Degenerate nodes are
/// masked and carry NaN vectors and angles.
struct FrameField {
  GridSpec spec;
  std::vector<TangentPair> tangents;
  std::vector<AdaptedFramePoint> frames;
  std::vector<std::uint8_t> masked;
  std::vector<double> beta;
  std::vector<double> signed_beta;
  int masked_count = 0;
  std::size_t seed = 0;
};

inline constexpr double kMaxMaskedFraction = 0.2;

/// Frames and contact angle on every node. The e1 sign is fixed by a
/// breadth-first flood fill from the first unmasked node (in index order),
/// choosing at each node the sign that best aligns e1 with its already fixed
/// neighbours; signed_beta is unwrapped along the same traversal. Throws
/// DegenerateContact if more than 20% of the nodes are masked.
FrameField contact_angle_field(const SurfaceGrid& grid);

}  // namespace contactgeom
