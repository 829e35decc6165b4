#include "contactgeom/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "contactgeom/errors.hpp"
#include "contactgeom/parallel.hpp"

namespace contactgeom {
namespace {

struct CurvatureSample {
  ScalarField h;
  ScalarField weight;  // sqrt(D) times quadrature weight, NaN where masked
  FrameField frames;
};

CurvatureSample curvature_sample(const SurfaceGrid& grid) {
  CurvatureSample s;
  s.frames = contact_angle_field(grid);
  const MetricField metric = first_fundamental_form(s.frames);
  s.h = shape_operator(s.frames, metric).mean_curvature;
  const GridSpec& spec = grid.spec;
  s.weight.resize(spec.size());
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      const std::size_t k = spec.index(i, j);
      const double w = quadrature_weight(spec.nu, spec.topology_u, spec.du(), i) *
                       quadrature_weight(spec.nv, spec.topology_v, spec.dv(), j);
      s.weight[k] = s.frames.masked[k] ? std::numeric_limits<double>::quiet_NaN() : w * std::sqrt(metric.det[k]);
    }
  }
  return s;
}

double energy_of(const CurvatureSample& s) {
  double e = 0.0;
  for (std::size_t k = 0; k < s.h.size(); ++k) {
    const double t = s.h[k] * s.h[k] * s.weight[k];
    if (std::isfinite(t)) e += t;
  }
  return e;
}

double max_abs(const ScalarField& f) { return field_stats(f).max_abs; }

std::vector<Vec4> unit_normals(const SurfaceGrid& grid) {
  const GridSpec& spec = grid.spec;
  std::vector<Vec4> n(spec.size());
  parallel_for(static_cast<std::size_t>(spec.nu), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < spec.nv; ++j) {
      const TangentPair t = tangent_pair(grid, i, j);
      n[spec.index(i, j)] = cross4(grid.at(i, j).vec(), t.xu, t.xv).normalized();
    }
  });
  return n;
}

SurfaceGrid displace(const SurfaceGrid& grid, const std::vector<Vec4>& normals, const ScalarField& psi,
                     double step) {
  SurfaceGrid out;
  out.spec = grid.spec;
  out.label = grid.label;
  out.points.resize(grid.points.size());
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    out.points[k] = UnitSpherePoint::normalized(grid.points[k].vec() + step * psi[k] * normals[k]);
  }
  const GridSpec& spec = out.spec;
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      try {
        tangent_pair(out, i, j);
      } catch (const GeometryError& e) {
        if (e.kind() != ErrorKind::DegenerateParametrization) throw;
        throw GeometryError(ErrorKind::StepTooLarge, e.what());
      }
    }
  }
  return out;
}

double cubic_bspline(double x) {
  x = std::abs(x);
  if (x < 1.0) return 2.0 / 3.0 - x * x + 0.5 * x * x * x;
  if (x < 2.0) return std::pow(2.0 - x, 3) / 6.0;
  return 0.0;
}

/// n x c matrix of periodic cubic B-spline values at the grid nodes.
Eigen::MatrixXd spline_basis(int n, int c) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, c);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * c / n;
    for (int a = 0; a < c; ++a) {
      double d = t - a;
      d -= c * std::round(d / c);
      B(i, a) = cubic_bspline(d);
    }
  }
  return B;
}

/// (I + L^2)^{-1} with L the periodic five-point Laplacian on a c x c grid of
/// spacing 2 pi / c.
Eigen::MatrixXd sobolev_preconditioner(int c) {
  const int n = c * c;
  const double h = 2.0 * std::numbers::pi / c;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  auto idx = [c](int a, int b) { return ((a + c) % c) * c + (b + c) % c; };
  for (int a = 0; a < c; ++a) {
    for (int b = 0; b < c; ++b) {
      const int k = idx(a, b);
      L(k, k) -= 4.0 / (h * h);
      L(k, idx(a + 1, b)) += 1.0 / (h * h);
      L(k, idx(a - 1, b)) += 1.0 / (h * h);
      L(k, idx(a, b + 1)) += 1.0 / (h * h);
      L(k, idx(a, b - 1)) += 1.0 / (h * h);
    }
  }
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) + L * L;
  return A.inverse();
}

ScalarField to_field(const Eigen::MatrixXd& m) {
  ScalarField f(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) f[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
  return f;
}

BetaStats beta_stats(const FrameField& frames) {
  const FieldStats s = field_stats(frames.beta);
  return {s.max_abs, s.mean, s.max - s.min};
}

void finish(FlowReport& report, const SurfaceGrid& grid) {
  const CurvatureSample s = curvature_sample(grid);
  report.final_energy = energy_of(s);
  report.final_max_abs_h = max_abs(s.h);
  report.beta = beta_stats(s.frames);
  report.final_area = area(grid);
  report.final_grid = grid;
}

FlowReport descend_r_only(const FlowConfig& config) {
  FlowReport report;
  report.config = config;
  if (config.surface != "rtorus" && config.surface != "clifford") {
    throw GeometryError(ErrorKind::InvalidArgument, "r-only mode needs the rtorus or clifford family");
  }
  for (const auto& [k, v] : config.params) {
    if (k == "eps" && v != 0.0) throw GeometryError(ErrorKind::InvalidArgument, "r-only mode takes no perturbation");
  }
  auto it = config.params.find("r");
  double r = it == config.params.end() ? 0.25 * std::numbers::pi : it->second;
  auto energy = [&](double x) { return willmore_energy(r_torus(x).sample(config.nu, config.nv)); };
  auto row = [&](int iter, double x, double e, double step) {
    const CurvatureSample s = curvature_sample(r_torus(x).sample(config.nu, config.nv));
    report.trace.push_back({iter, e, max_abs(s.h), field_stats(s.frames.beta).max_abs, step, x});
  };

  double e = energy(r);
  report.initial_energy = e;
  row(0, r, e, 0.0);
  report.stop_reason = "iteration limit";
  const double h = 1e-5;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    report.iterations = iter;
    const double g = (energy(r + h) - energy(r - h)) / (2.0 * h);
    double alpha = config.step;
    bool accepted = false;
    double next = r, next_e = e;
    for (int trial = 0; trial < 60; ++trial) {
      next = r - alpha * g;
      bool ok = true;
      try {
        next_e = energy(next);
      } catch (const GeometryError& err) {
        if (err.kind() != ErrorKind::RangeError) throw;
        ok = false;
      }
      if (ok && (config.variant == DescentVariant::fixed_step || next_e <= e - config.armijo * alpha * g * g)) {
        accepted = true;
        break;
      }
      ++report.rejected_trials;
      alpha *= 0.5;
    }
    if (!accepted) {
      report.stop_reason = "line search failed";
      report.converged = std::abs(g) * config.step < config.r_tolerance;
      break;
    }
    ++report.accepted_steps;
    const double moved = std::abs(next - r);
    r = next;
    e = next_e;
    row(iter, r, e, alpha);
    if (moved < config.r_tolerance) {
      report.converged = true;
      report.stop_reason = "r update below tolerance";
      break;
    }
  }
  report.final_r = r;
  finish(report, r_torus(r).sample(config.nu, config.nv));
  return report;
}

FlowReport descend_full(const FlowConfig& config) {
  FlowReport report;
  report.config = config;
  const CatalogEntry entry = make_entry(config.surface, config.params);
  SurfaceGrid grid = entry.sample(config.nu, config.nv);
  // Every energy evaluation below sees grid differences only.
  grid.drop_partials();

  CurvatureSample s = curvature_sample(grid);
  double e = energy_of(s);
  report.initial_energy = e;
  report.trace.push_back({0, e, max_abs(s.h), field_stats(s.frames.beta).max_abs, 0.0, 0.0});
  report.stop_reason = "iteration limit";
  if (max_abs(s.h) < config.tolerance) {
    report.converged = true;
    report.stop_reason = "tolerance reached";
    finish(report, grid);
    return report;
  }
  if (!grid.spec.compact()) {
    throw GeometryError(ErrorKind::InvalidArgument, "the full flow needs a doubly periodic surface");
  }

  const int c = config.control;
  const Eigen::MatrixXd Bu = spline_basis(grid.spec.nu, c);
  const Eigen::MatrixXd Bv = spline_basis(grid.spec.nv, c);
  const Eigen::MatrixXd P = sobolev_preconditioner(c);
  auto displacement = [&](const Eigen::VectorXd& coef) {
    const Eigen::MatrixXd C = Eigen::Map<const Eigen::MatrixXd>(coef.data(), c, c).transpose();
    return to_field(Bu * C * Bv.transpose());
  };

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    report.iterations = iter;
    const std::vector<Vec4> normals = unit_normals(grid);
    auto energy_at = [&](const Eigen::VectorXd& coef) {
      return energy_of(curvature_sample(displace(grid, normals, displacement(coef), 1.0)));
    };

    Eigen::VectorXd grad(c * c);
    parallel_for(static_cast<std::size_t>(c * c), [&](std::size_t q) {
      Eigen::VectorXd coef = Eigen::VectorXd::Zero(c * c);
      coef[static_cast<Eigen::Index>(q)] = config.fd_step;
      const double plus = energy_at(coef);
      coef[static_cast<Eigen::Index>(q)] = -config.fd_step;
      const double minus = energy_at(coef);
      grad[static_cast<Eigen::Index>(q)] = (plus - minus) / (2.0 * config.fd_step);
    });
    const Eigen::VectorXd direction = -(P * grad);
    const double slope = grad.dot(direction);

    double alpha = config.step;
    bool accepted = false;
    SurfaceGrid trial;
    CurvatureSample trial_sample;
    double trial_e = 0.0;
    for (int attempt = 0; attempt < 50; ++attempt) {
      try {
        trial = displace(grid, normals, displacement(alpha * direction), 1.0);
        trial_sample = curvature_sample(trial);
        trial_e = energy_of(trial_sample);
        if (config.variant == DescentVariant::fixed_step || trial_e <= e + config.armijo * alpha * slope) {
          accepted = true;
          break;
        }
      } catch (const GeometryError& err) {
        if (err.kind() != ErrorKind::StepTooLarge && err.kind() != ErrorKind::DegenerateContact) throw;
      }
      ++report.rejected_trials;
      alpha *= 0.5;
    }
    if (!accepted) {
      report.stop_reason = "line search failed";
      break;
    }
    ++report.accepted_steps;
    grid = std::move(trial);
    s = std::move(trial_sample);
    e = trial_e;
    const double hmax = max_abs(s.h);
    report.trace.push_back({iter, e, hmax, field_stats(s.frames.beta).max_abs, alpha, 0.0});
    if (hmax < config.tolerance) {
      report.converged = true;
      report.stop_reason = "tolerance reached";
      break;
    }
  }
  finish(report, grid);
  return report;
}

}  // namespace

double area(const SurfaceGrid& grid) {
  const FrameField frames = contact_angle_field(grid);
  const MetricField metric = first_fundamental_form(frames);
  const GridSpec& spec = grid.spec;
  double a = 0.0;
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      const std::size_t k = spec.index(i, j);
      if (frames.masked[k]) continue;
      a += quadrature_weight(spec.nu, spec.topology_u, spec.du(), i) *
           quadrature_weight(spec.nv, spec.topology_v, spec.dv(), j) * std::sqrt(metric.det[k]);
    }
  }
  return a;
}

double willmore_energy(const SurfaceGrid& grid) { return energy_of(curvature_sample(grid)); }

SurfaceGrid flow_step(const SurfaceGrid& grid, const ScalarField& psi, double step) {
  if (psi.size() != grid.points.size()) {
    throw GeometryError(ErrorKind::InvalidArgument, "displacement field has the wrong size");
  }
  return displace(grid, unit_normals(grid), psi, step);
}

std::string_view to_string(DescentVariant v) {
  return v == DescentVariant::fixed_step ? "fixed-step" : "backtracking";
}

std::string_view to_string(FlowMode m) { return m == FlowMode::full ? "full" : "r-only"; }

DescentVariant descent_variant_from_string(std::string_view s) {
  if (s == "fixed-step") return DescentVariant::fixed_step;
  if (s == "backtracking") return DescentVariant::backtracking;
  throw GeometryError(ErrorKind::InvalidArgument, "unknown descent variant '" + std::string(s) + "'");
}

FlowMode flow_mode_from_string(std::string_view s) {
  if (s == "full") return FlowMode::full;
  if (s == "r-only") return FlowMode::r_only;
  throw GeometryError(ErrorKind::InvalidArgument, "unknown flow mode '" + std::string(s) + "'");
}

void FlowConfig::validate() const {
  auto fail = [](const std::string& m) { throw GeometryError(ErrorKind::InvalidArgument, m); };
  if (!(step > 0.0)) fail("step must be positive");
  if (!(tolerance > 0.0)) fail("tolerance must be positive");
  if (max_iterations < 0) fail("iteration count must be non-negative");
  if (control < 4) fail("need at least 4 control coefficients per axis");
  if (!(fd_step > 0.0)) fail("difference step must be positive");
  if (nu < 8 || nv < 8) fail("grid must be at least 8x8");
}

FlowReport descend(const FlowConfig& config) {
  config.validate();
  return config.mode == FlowMode::r_only ? descend_r_only(config) : descend_full(config);
}

std::string_view to_string(ProbeOutcome o) {
  switch (o) {
    case ProbeOutcome::pass: return "pass";
    case ProbeOutcome::fail: return "fail";
    case ProbeOutcome::not_applicable: return "not_applicable";
    case ProbeOutcome::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict theorem_probe(const FlowReport& report, const SurfaceGrid& grid) {
  Verdict v;
  const SurfaceAnalysis a = analyze_surface(grid);
  const FieldStats beta = field_stats(a.frames.beta);
  v.beta_spread = beta.max - beta.min;
  v.k_max_abs = field_stats(a.k_intrinsic).max_abs;
  v.max_abs_h = field_stats(a.shape.mean_curvature).max_abs;
  char buf[160];
  std::snprintf(buf, sizeof buf, "beta spread %.3e, max|K| %.3e, max|H| %.3e", v.beta_spread, v.k_max_abs,
                v.max_abs_h);
  if (!report.converged) {
    v.outcome = ProbeOutcome::inconclusive;
    v.message = std::string("flow did not converge; ") + buf;
  } else if (v.beta_spread >= kProbeBetaSpread) {
    v.outcome = ProbeOutcome::not_applicable;
    v.message = std::string("beta is not constant; ") + buf;
  } else if (v.k_max_abs < kProbeCurvature) {
    v.outcome = ProbeOutcome::pass;
    v.message = std::string("constant beta and flat; ") + buf;
  } else {
    v.outcome = ProbeOutcome::fail;
    v.message = std::string("constant beta but not flat; ") + buf;
  }
  return v;
}

}  // namespace contactgeom
