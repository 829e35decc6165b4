#pragma once

// JSON reports and CSV field dumps. Numbers are written with 13 significant
// digits so outputs are stable across runs.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "contactgeom/calculus.hpp"
#include "contactgeom/catalog.hpp"
#include "contactgeom/flow.hpp"

namespace contactgeom {

inline constexpr int kFormatVersion = 1;

struct ResidualSummary {
  std::string identity;
  IdentityLevel level;
};

struct AnalysisReport {
  std::string label;
  GridSpec spec;
  PartialsSource partials = PartialsSource::grid_difference;
  FieldStats beta;
  FieldStats k_intrinsic;
  FieldStats k_extrinsic;
  FieldStats mean_curvature;
  int masked = 0;
  double pole_band = kDefaultPoleBand;
  int near_pole = 0;  // nodes with |beta - pi/2| < pole_band
  double area = 0.0;
  double willmore_energy = 0.0;
  /// max |beta - arccos(x2)|
  double beta_vs_arccos_x2 = 0.0;
  // Deviations from the catalog's closed forms where they exist.
  std::optional<double> beta_truth_error;
  std::optional<double> k_truth_error;
  std::optional<double> h_truth_error;
  std::optional<double> shape_truth_error;
  std::vector<ResidualSummary> residuals;
};

AnalysisReport build_analysis_report(const SurfaceAnalysis& analysis, const GroundTruth* truth = nullptr,
                                     double band = kDefaultPoleBand);

/// Round to 13 significant digits; non-finite values become null.
nlohmann::json number(double x);

nlohmann::json to_json(const AnalysisReport& r);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const FlowReport& r, const std::optional<Verdict>& verdict);
nlohmann::json to_json(const CatalogEntry& e);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);

/// u,v,x1,y1,x2,y2,beta,K,H,res_curvature,res_laplacian,masked
void write_fields_csv(const SurfaceAnalysis& analysis, std::ostream& out, double band = kDefaultPoleBand);
void write_fields_csv(const SurfaceAnalysis& analysis, const std::filesystem::path& path,
                      double band = kDefaultPoleBand);

/// iteration,energy,max_abs_H,max_abs_beta,step,r
void write_trace_csv(const FlowReport& report, std::ostream& out);
void write_trace_csv(const FlowReport& report, const std::filesystem::path& path);

/// u,v,residual for the finest level of a refinement study.
void write_residual_csv(const IdentityReport& report, const std::filesystem::path& path);

}  // namespace contactgeom
