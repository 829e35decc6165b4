#include "contactgeom/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>

#include "contactgeom/errors.hpp"

namespace contactgeom {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError(ErrorKind::InvalidArgument, "cannot write " + path.string());
  return out;
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

json stats_json(const FieldStats& s) {
  return {{"min", number(s.min)}, {"max", number(s.max)}, {"mean", number(s.mean)},
          {"max_abs", number(s.max_abs)}, {"count", s.count}};
}

json spec_json(const GridSpec& s) {
  return {{"nu", s.nu},
          {"nv", s.nv},
          {"u_range", {number(s.u_range.lo), number(s.u_range.hi)}},
          {"v_range", {number(s.v_range.lo), number(s.v_range.hi)}},
          {"topology_u", to_string(s.topology_u)},
          {"topology_v", to_string(s.topology_v)}};
}

json level_json(const IdentityLevel& l) {
  return {{"nu", l.nu},
          {"nv", l.nv},
          {"h", number(l.h)},
          {"linf", number(l.linf)},
          {"l2", number(l.l2)},
          {"evaluated", l.evaluated},
          {"excluded_near_pole", l.excluded_near_pole},
          {"excluded_masked", l.excluded_masked}};
}

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

}  // namespace

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  if (x == 0.0) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return std::strtod(buf, nullptr);
}

AnalysisReport build_analysis_report(const SurfaceAnalysis& a, const GroundTruth* truth, double band) {
  AnalysisReport r;
  const GridSpec& spec = a.grid.spec;
  r.label = a.grid.label;
  r.spec = spec;
  r.partials = a.grid.partials ? a.grid.partials_kind : PartialsSource::grid_difference;
  r.beta = field_stats(a.frames.beta);
  r.k_intrinsic = field_stats(a.k_intrinsic);
  r.k_extrinsic = field_stats(a.k_extrinsic);
  r.mean_curvature = field_stats(a.shape.mean_curvature);
  r.masked = a.frames.masked_count;
  r.pole_band = band;

  double area = 0.0, energy = 0.0;
  double beta_err = 0.0, k_err = 0.0, h_err = 0.0, s_err = 0.0;
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      const std::size_t k = spec.index(i, j);
      if (a.frames.masked[k]) continue;
      const double beta = a.frames.beta[k];
      if (std::abs(beta - 0.5 * std::numbers::pi) < band) ++r.near_pole;
      const double w = quadrature_weight(spec.nu, spec.topology_u, spec.du(), i) *
                       quadrature_weight(spec.nv, spec.topology_v, spec.dv(), j) * std::sqrt(a.metric.det[k]);
      area += w;
      const double h = a.shape.mean_curvature[k];
      if (std::isfinite(h)) energy += w * h * h;
      const double x2 = std::clamp(a.grid.points[k].x2(), -1.0, 1.0);
      r.beta_vs_arccos_x2 = std::max(r.beta_vs_arccos_x2, std::abs(beta - std::acos(x2)));
      if (truth) {
        const double u = spec.u(i), v = spec.v(j);
        if (truth->beta) beta_err = std::max(beta_err, std::abs(beta - truth->beta(u, v)));
        if (truth->gaussian_curvature && std::isfinite(a.k_intrinsic[k]))
          k_err = std::max(k_err, std::abs(a.k_intrinsic[k] - truth->gaussian_curvature(u, v)));
        if (truth->mean_curvature && std::isfinite(h))
          h_err = std::max(h_err, std::abs(h - truth->mean_curvature(u, v)));
        if (truth->shape_operator && a.shape.S[k].allFinite())
          s_err = std::max(s_err, (a.shape.S[k] - truth->shape_operator(u, v)).cwiseAbs().maxCoeff());
      }
    }
  }
  r.area = area;
  r.willmore_energy = energy;
  if (truth) {
    if (truth->beta) r.beta_truth_error = beta_err;
    if (truth->gaussian_curvature) r.k_truth_error = k_err;
    if (truth->mean_curvature) r.h_truth_error = h_err;
    if (truth->shape_operator) r.shape_truth_error = s_err;
  }
  for (Identity id : {Identity::curvature, Identity::laplacian, Identity::connection, Identity::gauss}) {
    r.residuals.push_back({std::string(to_string(id)), summarize_residual(identity_residual(id, a, band), a)});
  }
  return r;
}

json to_json(const AnalysisReport& r) {
  json residuals = json::object();
  for (const auto& s : r.residuals) residuals[s.identity] = level_json(s.level);
  json truth = {{"beta_max_error", optional_number(r.beta_truth_error)},
                {"K_max_error", optional_number(r.k_truth_error)},
                {"H_max_error", optional_number(r.h_truth_error)},
                {"shape_operator_max_error", optional_number(r.shape_truth_error)}};
  return {{"format_version", kFormatVersion},
          {"kind", "analysis"},
          {"surface", r.label},
          {"grid", spec_json(r.spec)},
          {"partials", to_string(r.partials)},
          {"beta", stats_json(r.beta)},
          {"K_intrinsic", stats_json(r.k_intrinsic)},
          {"K_extrinsic", stats_json(r.k_extrinsic)},
          {"H", stats_json(r.mean_curvature)},
          {"masked_nodes", r.masked},
          {"pole_band", number(r.pole_band)},
          {"near_pole_nodes", r.near_pole},
          {"area", number(r.area)},
          {"willmore_energy", number(r.willmore_energy)},
          {"max_abs_beta_minus_arccos_x2", number(r.beta_vs_arccos_x2)},
          {"ground_truth", truth},
          {"residuals", residuals}};
}

json to_json(const IdentityReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) levels.push_back(level_json(l));
  return {{"format_version", kFormatVersion},
          {"kind", "identity"},
          {"identity", r.name},
          {"surface", r.surface},
          {"pole_band", number(r.band)},
          {"levels", levels},
          {"observed_order", r.observed_order ? number(*r.observed_order) : json(nullptr)},
          {"resolved_to_roundoff", r.resolved_to_roundoff},
          {"bound", number(r.bound)},
          {"min_order", number(kMinObservedOrder)},
          {"passed", r.passed()}};
}

json to_json(const FlowReport& r, const std::optional<Verdict>& verdict) {
  const FlowConfig& c = r.config;
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = number(v);
  json config = {{"surface", c.surface},
                 {"params", params},
                 {"grid", {c.nu, c.nv}},
                 {"step", number(c.step)},
                 {"max_iterations", c.max_iterations},
                 {"tolerance", number(c.tolerance)},
                 {"variant", to_string(c.variant)},
                 {"mode", to_string(c.mode)},
                 {"control", c.control},
                 {"fd_step", number(c.fd_step)}};
  json energies = json::array();
  for (const auto& row : r.trace) energies.push_back(number(row.energy));
  json out = {{"format_version", kFormatVersion},
              {"kind", "flow"},
              {"config", config},
              {"energy", energies},
              {"initial_energy", number(r.initial_energy)},
              {"final_energy", number(r.final_energy)},
              {"final_max_abs_H", number(r.final_max_abs_h)},
              {"beta", {{"max", number(r.beta.max)}, {"mean", number(r.beta.mean)}, {"spread", number(r.beta.spread)}}},
              {"final_area", number(r.final_area)},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"accepted_steps", r.accepted_steps},
              {"rejected_trials", r.rejected_trials},
              {"stop_reason", r.stop_reason},
              {"final_r", optional_number(r.final_r)}};
  if (verdict) {
    out["probe"] = {{"verdict", to_string(verdict->outcome)},
                    {"beta_spread", number(verdict->beta_spread)},
                    {"max_abs_K", number(verdict->k_max_abs)},
                    {"max_abs_H", number(verdict->max_abs_h)},
                    {"message", verdict->message}};
  } else {
    out["probe"] = nullptr;
  }
  return out;
}

json to_json(const CatalogEntry& e) {
  json params = json::array();
  for (const auto& p : e.params) {
    params.push_back({{"name", p.name}, {"default", number(p.default_value)}, {"description", p.description}});
  }
  return {{"name", e.name},
          {"description", e.description},
          {"params", params},
          {"grid", spec_json(e.recommended)},
          {"ground_truth", e.truth.notes}};
}

void write_json(const json& j, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_fields_csv(const SurfaceAnalysis& a, std::ostream& out, double band) {
  const GridSpec& spec = a.grid.spec;
  const ScalarField rc = identity_residual(Identity::curvature, a, band).values;
  const ScalarField rl = identity_residual(Identity::laplacian, a, band).values;
  out << "u,v,x1,y1,x2,y2,beta,K,H,res_curvature,res_laplacian,masked\n";
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      const std::size_t k = spec.index(i, j);
      const Vec4& p = a.grid.points[k].vec();
      out << fmt(spec.u(i)) << ',' << fmt(spec.v(j)) << ',' << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2])
          << ',' << fmt(p[3]) << ',' << fmt(a.frames.beta[k]) << ',' << fmt(a.k_intrinsic[k]) << ','
          << fmt(a.shape.mean_curvature[k]) << ',' << fmt(rc[k]) << ',' << fmt(rl[k]) << ','
          << static_cast<int>(a.frames.masked[k]) << '\n';
    }
  }
}

void write_fields_csv(const SurfaceAnalysis& a, const std::filesystem::path& path, double band) {
  auto out = open_out(path);
  write_fields_csv(a, out, band);
}

void write_trace_csv(const FlowReport& r, std::ostream& out) {
  out << "iteration,energy,max_abs_H,max_abs_beta,step,r\n";
  for (const auto& row : r.trace) {
    out << row.iteration << ',' << fmt(row.energy) << ',' << fmt(row.max_abs_h) << ',' << fmt(row.max_abs_beta)
        << ',' << fmt(row.step) << ',' << fmt(row.r) << '\n';
  }
}

void write_trace_csv(const FlowReport& r, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_trace_csv(r, out);
}

void write_residual_csv(const IdentityReport& r, const std::filesystem::path& path) {
  auto out = open_out(path);
  const GridSpec& spec = r.finest_spec;
  out << "u,v,residual\n";
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      out << fmt(spec.u(i)) << ',' << fmt(spec.v(j)) << ',' << fmt(r.finest_residual[spec.index(i, j)]) << '\n';
    }
  }
}

}  // namespace contactgeom
