#pragma once

// Discrete differential operators in the adapted frame and residual checks of
// the structure equations of a surface in S^3.
//
// Scalar fields are plain per-node vectors; NaN marks a node that is masked
// (degenerate contact) or whose stencil reaches a masked node. NaN flows
// through every stencil, so masking propagates without bookkeeping, and all
// reductions skip non-finite entries.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "contactgeom/surface.hpp"

namespace contactgeom {

using Mat2 = Eigen::Matrix2d;
using ScalarField = std::vector<double>;

/// E_u, E_v, F_u, G_u taken from second partials of the immersion.
struct MetricDerivatives {
  std::vector<double> eu, ev, fu, gu;
};

struct MetricField {
  GridSpec spec;
  std::vector<Mat2> g;
  std::vector<Mat2> inverse;
  std::vector<double> det;
  /// Present when the grid stores second partials; otherwise the metric
  /// coefficients are differenced on the grid.
  std::optional<MetricDerivatives> derivatives;
};

/// Gram matrix of (Xu, Xv) at every node.
MetricField first_fundamental_form(const FrameField& frames);

/// Attaches exact metric derivatives when `grid` carries second partials.
void attach_metric_derivatives(MetricField& metric, const SurfaceGrid& grid, const FrameField& frames);

/// Weingarten map S(X) = -D_X e3 written in the orthonormal basis (e1, e2):
/// S(i, j) = -<D_{e_i} e3, e_j>. The derivative of e3 is taken by finite
/// differences of the e3 field along the grid.
struct ShapeOperatorField {
  GridSpec spec;
  std::vector<Mat2> S;
  ScalarField mean_curvature;  // trace / 2
  ScalarField det;
};

ShapeOperatorField shape_operator(const FrameField& frames, const MetricField& metric);

/// Intrinsic curvature from the metric alone:
///   K = ( d/dv(sqrt(D) G211 / E) - d/du(sqrt(D) G212 / E) ) / sqrt(D)
/// with D = EG - F^2 and the Christoffel symbols G211, G212 built from the
/// metric derivatives (exact when attached, differenced otherwise).
ScalarField gaussian_curvature_intrinsic(const MetricField& metric);

/// Gauss equation in S^3: K = 1 + det S.
ScalarField gaussian_curvature_extrinsic(const ShapeOperatorField& shape);

/// (df(e1), df(e2)) for a scalar field f.
struct FrameGradient {
  ScalarField b1;
  ScalarField b2;
  ScalarField norm;
};

FrameGradient frame_gradient(const ScalarField& f, const FrameField& frames, const MetricField& metric);

/// Laplace-Beltrami operator in divergence form,
///   (1 / sqrt(D)) d_i( sqrt(D) g^{ij} d_j f ),
/// built from nested first-derivative stencils.
ScalarField laplace_beltrami(const ScalarField& f, const MetricField& metric);

/// Connection form theta_2^1(X) = <D_X e2, e1> evaluated on e1 and e2.
struct ConnectionField {
  ScalarField on_e1;
  ScalarField on_e2;
};

ConnectionField connection_form(const FrameField& frames, const MetricField& metric);

/// Everything the identity checks need for one grid.
struct SurfaceAnalysis {
  SurfaceGrid grid;
  FrameField frames;
  MetricField metric;
  ShapeOperatorField shape;
  ScalarField k_intrinsic;
  ScalarField k_extrinsic;
  FrameGradient beta_gradient;  // of signed_beta
  ScalarField beta_laplacian;   // of signed_beta
  ConnectionField connection;
};

SurfaceAnalysis analyze_surface(SurfaceGrid grid);

/// Same as analyze_surface but with a caller-supplied frame field, e.g. one
/// with a different e1 sign convention.
SurfaceAnalysis analyze_frames(SurfaceGrid grid, FrameField frames);

enum class Identity { curvature, laplacian, connection, gauss };

std::string_view to_string(Identity id);
Identity identity_from_string(std::string_view s);

/// Exclusion half-width around beta = pi/2 where tan(beta) blows up.
inline constexpr double kDefaultPoleBand = 1e-3;
/// Residual norms at or below this are treated as exact.
inline constexpr double kRoundoffFloor = 1e-10;
inline constexpr double kMinObservedOrder = 1.7;

/// Bound on the finest-level L-infinity residual for each identity.
double documented_bound(Identity id);

struct IdentityResidual {
  ScalarField values;
  int excluded_near_pole = 0;  // |beta - pi/2| < band
  int excluded_masked = 0;     // masked or touched by a masked stencil
};

/// Per-node residual of one identity:
///   curvature:  K_int - (1 - (b1 + 1)^2 - b2^2)
///   laplacian:  Lap(beta) + tan(beta) ((b1 + 2)^2 + b2^2)
///   connection: max(|theta(e1) - tan(beta) b2|, |theta(e2) + tan(beta)(b1 + 2)|)
///   gauss:      K_int - K_ext
/// with beta the signed contact angle and (b1, b2) its frame gradient.
IdentityResidual identity_residual(Identity id, const SurfaceAnalysis& analysis,
                                   double band = kDefaultPoleBand);

struct IdentityLevel {
  int nu = 0;
  int nv = 0;
  double h = 0.0;
  double linf = 0.0;
  double l2 = 0.0;
  int evaluated = 0;
  int excluded_near_pole = 0;
  int excluded_masked = 0;
};

struct IdentityReport {
  std::string name;
  std::string surface;
  double band = kDefaultPoleBand;
  std::vector<IdentityLevel> levels;
  /// Least-squares slope of log(linf) against log(h); needs >= 3 levels with
  /// residuals above the round-off floor.
  std::optional<double> observed_order;
  bool resolved_to_roundoff = false;
  double bound = 0.0;
  GridSpec finest_spec;
  ScalarField finest_residual;

  /// Order at least 1.7 (or every level at round-off) and finest L-infinity
  /// within the bound.
  bool passed(double min_order = kMinObservedOrder) const;
};

IdentityLevel summarize_residual(const IdentityResidual& residual, const SurfaceAnalysis& analysis);

std::optional<double> observed_order(const std::vector<IdentityLevel>& levels);

IdentityReport verify_identity(Identity id, const std::vector<SurfaceGrid>& levels,
                               double band = kDefaultPoleBand);

IdentityReport verify_curvature_identity(const SurfaceGrid& grid);
IdentityReport verify_laplacian_identity(const SurfaceGrid& grid, double band = kDefaultPoleBand);
IdentityReport verify_connection_identity(const SurfaceGrid& grid, double band = kDefaultPoleBand);

struct MinimalitySummary {
  ScalarField abs_mean_curvature;
  double max = 0.0;
  double mean = 0.0;
};

MinimalitySummary verify_minimality(const SurfaceAnalysis& analysis);

/// (b1 + 2)^2 + b2^2 - (|grad b|^2 + 4 (b1 + 1)); identically zero.
double laplacian_form_gap(double b1, double b2);

/// Reductions over finite entries.
struct FieldStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double max_abs = 0.0;
  int count = 0;
};

FieldStats field_stats(const ScalarField& f);

}  // namespace contactgeom
