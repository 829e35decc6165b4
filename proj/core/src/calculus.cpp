#include "contactgeom/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "contactgeom/errors.hpp"
#include "contactgeom/parallel.hpp"

namespace contactgeom {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Coefficients (a, b) with e = a Xu + b Xv for a tangent vector e.
Eigen::Vector2d param_coefficients(const Vec4& e, const TangentPair& t, const Mat2& inverse) {
  return inverse * Eigen::Vector2d(inner(e, t.xu), inner(e, t.xv));
}

std::vector<Vec4> collect(const FrameField& frames, Vec4 AdaptedFramePoint::*member) {
  std::vector<Vec4> out(frames.frames.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = frames.frames[k].*member;
  return out;
}

/// Directional derivatives D_{e1} X and D_{e2} X of a vector field X, paired
/// with a target field through `project`.
template <class Project>
void frame_derivatives(const std::vector<Vec4>& field, const FrameField& frames, const MetricField& metric,
                       Project project) {
  const GridSpec& spec = frames.spec;
  parallel_for(static_cast<std::size_t>(spec.nu), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < spec.nv; ++j) {
      const std::size_t k = spec.index(i, j);
      const Vec4 du = diff_u(field, spec, i, j);
      const Vec4 dv = diff_v(field, spec, i, j);
      const AdaptedFramePoint& f = frames.frames[k];
      const Eigen::Vector2d c1 = param_coefficients(f.e1, frames.tangents[k], metric.inverse[k]);
      const Eigen::Vector2d c2 = param_coefficients(f.e2, frames.tangents[k], metric.inverse[k]);
      project(k, Vec4(c1[0] * du + c1[1] * dv), Vec4(c2[0] * du + c2[1] * dv));
    }
  });
}

double sqr(double x) { return x * x; }

}  // namespace

MetricField first_fundamental_form(const FrameField& frames) {
  MetricField m;
  m.spec = frames.spec;
  const std::size_t n = frames.tangents.size();
  m.g.resize(n);
  m.inverse.resize(n);
  m.det.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const TangentPair& t = frames.tangents[k];
    Mat2 g;
    g << t.xu.dot(t.xu), t.xu.dot(t.xv), t.xv.dot(t.xu), t.xv.dot(t.xv);
    const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    if (!(det > 1e-12)) {
      throw GeometryError(ErrorKind::DegenerateMetric, "metric determinant " + std::to_string(det));
    }
    m.g[k] = g;
    m.det[k] = det;
    Mat2 inv;
    inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    m.inverse[k] = inv / det;
  }
  return m;
}

void attach_metric_derivatives(MetricField& metric, const SurfaceGrid& grid, const FrameField& frames) {
  if (!grid.partials || grid.partials->duu.empty()) return;
  const GridPartials& p = *grid.partials;
  const std::size_t n = frames.tangents.size();
  MetricDerivatives d;
  d.eu.resize(n);
  d.ev.resize(n);
  d.fu.resize(n);
  d.gu.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const TangentPair& t = frames.tangents[k];
    d.eu[k] = 2.0 * inner(p.duu[k], t.xu);
    d.ev[k] = 2.0 * inner(p.duv[k], t.xu);
    d.fu[k] = inner(p.duu[k], t.xv) + inner(t.xu, p.duv[k]);
    d.gu[k] = 2.0 * inner(p.duv[k], t.xv);
  }
  metric.derivatives = std::move(d);
}

ShapeOperatorField shape_operator(const FrameField& frames, const MetricField& metric) {
  ShapeOperatorField s;
  s.spec = frames.spec;
  const std::size_t n = frames.frames.size();
  s.S.resize(n);
  s.mean_curvature.resize(n);
  s.det.resize(n);
  const std::vector<Vec4> e3 = collect(frames, &AdaptedFramePoint::e3);
  frame_derivatives(e3, frames, metric, [&](std::size_t k, const Vec4& d1, const Vec4& d2) {
    const AdaptedFramePoint& f = frames.frames[k];
    Mat2 S;
    S << -inner(d1, f.e1), -inner(d1, f.e2), -inner(d2, f.e1), -inner(d2, f.e2);
    s.S[k] = S;
    s.mean_curvature[k] = 0.5 * S.trace();
    s.det[k] = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
  });
  return s;
}

ScalarField gaussian_curvature_intrinsic(const MetricField& metric) {
  const GridSpec& spec = metric.spec;
  const std::size_t n = metric.g.size();
  ScalarField E(n), F(n), G(n);
  for (std::size_t k = 0; k < n; ++k) {
    E[k] = metric.g[k](0, 0);
    F[k] = metric.g[k](0, 1);
    G[k] = metric.g[k](1, 1);
  }
  const MetricDerivatives d = metric.derivatives
                                  ? *metric.derivatives
                                  : MetricDerivatives{diff_u(E, spec), diff_v(E, spec), diff_u(F, spec), diff_u(G, spec)};
  const ScalarField &Eu = d.eu, &Ev = d.ev, &Fu = d.fu, &Gu = d.gu;

  ScalarField a(n), b(n);  // sqrt(D) G^2_11 / E and sqrt(D) G^2_12 / E
  for (std::size_t k = 0; k < n; ++k) {
    const double D = metric.det[k];
    const double gamma211 = (2.0 * E[k] * Fu[k] - E[k] * Ev[k] - F[k] * Eu[k]) / (2.0 * D);
    const double gamma212 = (E[k] * Gu[k] - F[k] * Ev[k]) / (2.0 * D);
    a[k] = std::sqrt(D) * gamma211 / E[k];
    b[k] = std::sqrt(D) * gamma212 / E[k];
  }
  const ScalarField av = diff_v(a, spec);
  const ScalarField bu = diff_u(b, spec);
  ScalarField K(n);
  for (std::size_t k = 0; k < n; ++k) K[k] = (av[k] - bu[k]) / std::sqrt(metric.det[k]);
  return K;
}

ScalarField gaussian_curvature_extrinsic(const ShapeOperatorField& shape) {
  ScalarField K(shape.det.size());
  for (std::size_t k = 0; k < K.size(); ++k) K[k] = 1.0 + shape.det[k];
  return K;
}

FrameGradient frame_gradient(const ScalarField& f, const FrameField& frames, const MetricField& metric) {
  const GridSpec& spec = frames.spec;
  const ScalarField fu = diff_u(f, spec);
  const ScalarField fv = diff_v(f, spec);
  FrameGradient g;
  const std::size_t n = f.size();
  g.b1.resize(n);
  g.b2.resize(n);
  g.norm.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const AdaptedFramePoint& fr = frames.frames[k];
    const Eigen::Vector2d c1 = param_coefficients(fr.e1, frames.tangents[k], metric.inverse[k]);
    const Eigen::Vector2d c2 = param_coefficients(fr.e2, frames.tangents[k], metric.inverse[k]);
    g.b1[k] = c1[0] * fu[k] + c1[1] * fv[k];
    g.b2[k] = c2[0] * fu[k] + c2[1] * fv[k];
    g.norm[k] = std::sqrt(g.b1[k] * g.b1[k] + g.b2[k] * g.b2[k]);
  }
  return g;
}

ScalarField laplace_beltrami(const ScalarField& f, const MetricField& metric) {
  const GridSpec& spec = metric.spec;
  const ScalarField fu = diff_u(f, spec);
  const ScalarField fv = diff_v(f, spec);
  const std::size_t n = f.size();
  ScalarField flux_u(n), flux_v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(metric.det[k]);
    const Mat2& inv = metric.inverse[k];
    flux_u[k] = root * (inv(0, 0) * fu[k] + inv(0, 1) * fv[k]);
    flux_v[k] = root * (inv(1, 0) * fu[k] + inv(1, 1) * fv[k]);
  }
  const ScalarField div_u = diff_u(flux_u, spec);
  const ScalarField div_v = diff_v(flux_v, spec);
  ScalarField out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = (div_u[k] + div_v[k]) / std::sqrt(metric.det[k]);
  return out;
}

ConnectionField connection_form(const FrameField& frames, const MetricField& metric) {
  ConnectionField c;
  const std::size_t n = frames.frames.size();
  c.on_e1.resize(n);
  c.on_e2.resize(n);
  const std::vector<Vec4> e2 = collect(frames, &AdaptedFramePoint::e2);
  frame_derivatives(e2, frames, metric, [&](std::size_t k, const Vec4& d1, const Vec4& d2) {
    c.on_e1[k] = inner(d1, frames.frames[k].e1);
    c.on_e2[k] = inner(d2, frames.frames[k].e1);
  });
  return c;
}

SurfaceAnalysis analyze_surface(SurfaceGrid grid) {
  FrameField frames = contact_angle_field(grid);
  return analyze_frames(std::move(grid), std::move(frames));
}

SurfaceAnalysis analyze_frames(SurfaceGrid grid, FrameField frames) {
  SurfaceAnalysis a;
  a.frames = std::move(frames);
  a.grid = std::move(grid);
  a.metric = first_fundamental_form(a.frames);
  attach_metric_derivatives(a.metric, a.grid, a.frames);
  a.shape = shape_operator(a.frames, a.metric);
  a.k_intrinsic = gaussian_curvature_intrinsic(a.metric);
  a.k_extrinsic = gaussian_curvature_extrinsic(a.shape);
  a.beta_gradient = frame_gradient(a.frames.signed_beta, a.frames, a.metric);
  a.beta_laplacian = laplace_beltrami(a.frames.signed_beta, a.metric);
  a.connection = connection_form(a.frames, a.metric);
  return a;
}

std::string_view to_string(Identity id) {
  switch (id) {
    case Identity::curvature: return "curvature";
    case Identity::laplacian: return "laplacian";
    case Identity::connection: return "connection";
    case Identity::gauss: return "gauss";
  }
  return "unknown";
}

Identity identity_from_string(std::string_view s) {
  for (Identity id : {Identity::curvature, Identity::laplacian, Identity::connection, Identity::gauss}) {
    if (s == to_string(id)) return id;
  }
  throw GeometryError(ErrorKind::InvalidArgument, "unknown identity '" + std::string(s) + "'");
}

double documented_bound(Identity id) {
  switch (id) {
    case Identity::curvature: return 1e-4;
    case Identity::laplacian: return 1e-3;
    case Identity::connection: return 1e-4;
    case Identity::gauss: return 5e-5;
  }
  return 0.0;
}

IdentityResidual identity_residual(Identity id, const SurfaceAnalysis& a, double band) {
  const std::size_t n = a.frames.frames.size();
  IdentityResidual r;
  r.values.assign(n, kNaN);
  const FrameGradient& g = a.beta_gradient;
  for (std::size_t k = 0; k < n; ++k) {
    const double beta = a.frames.signed_beta[k];
    const bool uses_tangent = id == Identity::laplacian || id == Identity::connection;
    if (uses_tangent && std::isfinite(beta) &&
        std::abs(a.frames.beta[k] - 0.5 * std::numbers::pi) < band) {
      ++r.excluded_near_pole;
      continue;
    }
    double value = kNaN;
    switch (id) {
      case Identity::curvature:
        value = a.k_intrinsic[k] - (1.0 - sqr(g.b1[k] + 1.0) - sqr(g.b2[k]));
        break;
      case Identity::laplacian:
        value = a.beta_laplacian[k] + std::tan(beta) * (sqr(g.b1[k] + 2.0) + sqr(g.b2[k]));
        break;
      case Identity::connection: {
        const double t = std::tan(beta);
        value = std::max(std::abs(a.connection.on_e1[k] - t * g.b2[k]),
                         std::abs(a.connection.on_e2[k] + t * (g.b1[k] + 2.0)));
        break;
      }
      case Identity::gauss:
        value = a.k_intrinsic[k] - a.k_extrinsic[k];
        break;
    }
    if (std::isfinite(value)) {
      r.values[k] = value;
    } else {
      ++r.excluded_masked;
    }
  }
  return r;
}

IdentityLevel summarize_residual(const IdentityResidual& residual, const SurfaceAnalysis& a) {
  const GridSpec& spec = a.grid.spec;
  IdentityLevel level;
  level.nu = spec.nu;
  level.nv = spec.nv;
  level.h = std::max(spec.du(), spec.dv());
  level.excluded_near_pole = residual.excluded_near_pole;
  level.excluded_masked = residual.excluded_masked;
  double weighted = 0.0;
  double area = 0.0;
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      const std::size_t k = spec.index(i, j);
      const double r = residual.values[k];
      if (!std::isfinite(r)) continue;
      const double w = quadrature_weight(spec.nu, spec.topology_u, spec.du(), i) *
                       quadrature_weight(spec.nv, spec.topology_v, spec.dv(), j) * std::sqrt(a.metric.det[k]);
      level.linf = std::max(level.linf, std::abs(r));
      weighted += w * r * r;
      area += w;
      ++level.evaluated;
    }
  }
  level.l2 = area > 0.0 ? std::sqrt(weighted / area) : 0.0;
  return level;
}

std::optional<double> observed_order(const std::vector<IdentityLevel>& levels) {
  if (levels.size() < 3) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& l : levels) {
    if (!(l.linf > kRoundoffFloor) || !(l.h > 0.0)) return std::nullopt;
    const double x = std::log(l.h);
    const double y = std::log(l.linf);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(levels.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (m * sxy - sx * sy) / denom;
}

bool IdentityReport::passed(double min_order) const {
  if (levels.empty()) return false;
  const double finest = levels.back().linf;
  if (!(finest <= bound)) return false;
  if (resolved_to_roundoff) return true;
  return observed_order && *observed_order >= min_order;
}

IdentityReport verify_identity(Identity id, const std::vector<SurfaceGrid>& levels, double band) {
  IdentityReport report;
  report.name = std::string(to_string(id));
  report.band = band;
  report.bound = documented_bound(id);
  for (const SurfaceGrid& grid : levels) {
    const SurfaceAnalysis a = analyze_surface(grid);
    const IdentityResidual r = identity_residual(id, a, band);
    report.levels.push_back(summarize_residual(r, a));
    report.surface = grid.label;
    report.finest_spec = grid.spec;
    report.finest_residual = r.values;
  }
  report.resolved_to_roundoff =
      !report.levels.empty() && std::all_of(report.levels.begin(), report.levels.end(),
                                            [](const IdentityLevel& l) { return l.linf <= kRoundoffFloor; });
  report.observed_order = observed_order(report.levels);
  return report;
}

IdentityReport verify_curvature_identity(const SurfaceGrid& grid) {
  return verify_identity(Identity::curvature, {grid});
}

IdentityReport verify_laplacian_identity(const SurfaceGrid& grid, double band) {
  return verify_identity(Identity::laplacian, {grid}, band);
}

IdentityReport verify_connection_identity(const SurfaceGrid& grid, double band) {
  return verify_identity(Identity::connection, {grid}, band);
}

MinimalitySummary verify_minimality(const SurfaceAnalysis& a) {
  MinimalitySummary m;
  m.abs_mean_curvature.resize(a.shape.mean_curvature.size());
  for (std::size_t k = 0; k < m.abs_mean_curvature.size(); ++k) {
    m.abs_mean_curvature[k] = std::abs(a.shape.mean_curvature[k]);
  }
  const FieldStats s = field_stats(m.abs_mean_curvature);
  m.max = s.max;
  m.mean = s.mean;
  return m;
}

double laplacian_form_gap(double b1, double b2) {
  return (sqr(b1 + 2.0) + sqr(b2)) - (sqr(b1) + sqr(b2) + 4.0 * (b1 + 1.0));
}

FieldStats field_stats(const ScalarField& f) {
  FieldStats s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double x : f) {
    if (!std::isfinite(x)) continue;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    s.max_abs = std::max(s.max_abs, std::abs(x));
    sum += x;
    ++s.count;
  }
  if (s.count == 0) {
    s.min = s.max = 0.0;
  } else {
    s.mean = sum / s.count;
  }
  return s;
}

}  // namespace contactgeom
