#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "contactgeom/catalog.hpp"
#include "contactgeom/errors.hpp"
#include "contactgeom/flow.hpp"
#include "contactgeom/report_io.hpp"
#include "contactgeom/samples_io.hpp"
#include "helpers.hpp"

using namespace contactgeom;

namespace {

GeometryError error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e;
  }
  ADD_FAILURE() << "no GeometryError thrown";
  return GeometryError(ErrorKind::InvalidArgument, "");
}

std::string native_header() { return "S3SAMPLES v1 8 8 periodic periodic 0 6.283185307179586 0 6.283185307179586\n"; }

}  // namespace

TEST(Samples, RoundTripNative) {
  const SurfaceGrid g = geodesic_sphere().sample(12, 10);
  std::stringstream ss;
  save_samples(g, ss);
  const SurfaceGrid back = load_samples(ss, "copy");
  EXPECT_EQ(back.spec.nu, 12);
  EXPECT_EQ(back.spec.nv, 10);
  EXPECT_EQ(back.spec.topology_u, Topology::chart);
  EXPECT_EQ(back.spec.topology_v, Topology::periodic);
  EXPECT_EQ(back.label, "copy");
  EXPECT_FALSE(back.partials.has_value());
  for (std::size_t k = 0; k < g.points.size(); ++k) EXPECT_NEAR((g.points[k].vec() - back.points[k].vec()).norm(), 0.0, 1e-11);
}

TEST(Samples, RoundTripFile) {
  const auto dir = testing_support::fresh_dir("samples");
  const SurfaceGrid g = clifford().sample(16, 16);
  save_samples(g, dir / "c.s3");
  const SurfaceGrid back = load_samples(dir / "c.s3");
  EXPECT_EQ(back.label, "c.s3");
  EXPECT_TRUE(back.spec.compact());
  EXPECT_NEAR(back.spec.u_range.hi, 2 * std::numbers::pi, 1e-11);
}

TEST(Samples, ParseErrorNamesTheLine) {
  std::stringstream ss(native_header() + "0 0 1 0 0 0\n0 0.785 1 0 0\n");
  const GeometryError e = error_of([&] { load_samples(ss, "x"); });
  EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
}

TEST(Samples, BadNumber) {
  std::stringstream ss(native_header() + "0 0 1 0 zero 0\n");
  const GeometryError e = error_of([&] { load_samples(ss, "x"); });
  EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
}

TEST(Samples, BadHeader) {
  std::stringstream ss("hello\n");
  EXPECT_EQ(error_of([&] { load_samples(ss, "x"); }).kind(), ErrorKind::ParseError);
  std::stringstream empty;
  EXPECT_EQ(error_of([&] { load_samples(empty, "x"); }).kind(), ErrorKind::ParseError);
  EXPECT_EQ(error_of([&] { load_samples(std::filesystem::path("/nonexistent/file.s3")); }).kind(),
            ErrorKind::ParseError);
}

TEST(Samples, OffSphereNamesTheNode) {
  SurfaceGrid g = clifford().sample(8, 8);
  std::stringstream ss;
  save_samples(g, ss);
  std::string text = ss.str();
  // Row for node (0, 2) is line 4; scale its x1 entry.
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) lines.push_back(line);
  std::istringstream row(lines[3]);
  double u, v, p[4];
  row >> u >> v >> p[0] >> p[1] >> p[2] >> p[3];
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.12e %.12e %.12e %.12e %.12e %.12e", u, v, p[0] * 1.01, p[1], p[2], p[3]);
  lines[3] = buf;
  std::string joined;
  for (const auto& l : lines) joined += l + "\n";
  std::stringstream bad(joined);
  const GeometryError e = error_of([&] { load_samples(bad, "x"); });
  EXPECT_EQ(e.kind(), ErrorKind::OffSphere);
  EXPECT_NE(std::string(e.what()).find("node (0, 2)"), std::string::npos) << e.what();
  EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
}

TEST(Samples, FieldsCsvIsAccepted) {
  const SurfaceAnalysis a = analyze_surface(geodesic_sphere().sample(16, 12));
  std::stringstream ss;
  write_fields_csv(a, ss, kDefaultPoleBand);
  const SurfaceGrid back = load_samples(ss, "fields");
  EXPECT_EQ(back.spec.nu, 16);
  EXPECT_EQ(back.spec.nv, 12);
  EXPECT_EQ(back.spec.topology_u, Topology::chart);
  EXPECT_EQ(back.spec.topology_v, Topology::periodic);
  for (std::size_t k = 0; k < back.points.size(); ++k)
    EXPECT_NEAR((back.points[k].vec() - a.grid.points[k].vec()).norm(), 0.0, 1e-11);
}

TEST(Report, NumberRounding) {
  EXPECT_TRUE(number(std::nan("")).is_null());
  EXPECT_EQ(number(-0.0).dump(), "0.0");
  EXPECT_DOUBLE_EQ(number(1.0 / 3.0).get<double>(), 3.333333333333e-01);
}

TEST(Report, AnalysisJson) {
  const CatalogEntry e = geodesic_sphere();
  const SurfaceAnalysis a = analyze_surface(e.sample(32, 32));
  const AnalysisReport r = build_analysis_report(a, &e.truth, 0.05);
  const nlohmann::json j = to_json(r);
  EXPECT_EQ(j["format_version"], kFormatVersion);
  EXPECT_EQ(j["kind"], "analysis");
  EXPECT_EQ(j["surface"], "geodesic_sphere");
  EXPECT_EQ(j["grid"]["topology_u"], "chart");
  EXPECT_EQ(j["partials"], "analytic");
  EXPECT_EQ(j["masked_nodes"], 0);
  EXPECT_EQ(j["beta"]["count"], 1024);
  EXPECT_LT(j["ground_truth"]["beta_max_error"].get<double>(), 1e-12);
  EXPECT_LT(j["ground_truth"]["K_max_error"].get<double>(), 1e-4);
  EXPECT_NEAR(j["area"].get<double>(), 4 * std::numbers::pi * std::cos(0.2), 1e-2);
  for (const char* id : {"curvature", "laplacian", "connection", "gauss"}) EXPECT_TRUE(j["residuals"].contains(id));
}

TEST(Report, NoTruthGivesNulls) {
  const SurfaceAnalysis a = analyze_surface(clifford().sample(16, 16));
  const nlohmann::json j = to_json(build_analysis_report(a, nullptr, kDefaultPoleBand));
  EXPECT_TRUE(j["ground_truth"]["beta_max_error"].is_null());
}

TEST(Report, FlowJsonAndTrace) {
  FlowConfig c;
  c.surface = "rtorus";
  c.params = {{"r", 0.7}};
  c.mode = FlowMode::r_only;
  c.nu = c.nv = 16;
  c.max_iterations = 2;
  const FlowReport r = descend(c);
  const nlohmann::json j = to_json(r, std::nullopt);
  EXPECT_EQ(j["kind"], "flow");
  EXPECT_EQ(j["config"]["mode"], "r-only");
  EXPECT_EQ(j["energy"].size(), r.trace.size());
  EXPECT_TRUE(j["probe"].is_null());
  std::stringstream ss;
  write_trace_csv(r, ss);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "iteration,energy,max_abs_H,max_abs_beta,step,r");
  int rows = 0;
  for (std::string line; std::getline(ss, line);) ++rows;
  EXPECT_EQ(rows, static_cast<int>(r.trace.size()));
}

TEST(Report, CatalogJson) {
  const nlohmann::json j = to_json(r_torus(0.5));
  EXPECT_EQ(j["name"], "rtorus");
  EXPECT_EQ(j["params"][0]["name"], "r");
}

TEST(Report, FieldsCsvMarksMaskedNodes) {
  SurfaceGrid g = clifford().sample(16, 16);
  const std::size_t k = g.spec.index(2, 3);
  const AmbientFrame c = canonical_frame(g.points[k]);
  g.partials->du[k] = c.f1;
  g.partials->dv[k] = c.f2;
  std::stringstream ss;
  write_fields_csv(analyze_surface(g), ss, kDefaultPoleBand);
  std::string line;
  for (int n = 0; n <= static_cast<int>(k) + 1; ++n) std::getline(ss, line);
  EXPECT_EQ(line.substr(line.size() - 2), ",1");
  EXPECT_NE(line.find("nan"), std::string::npos);
}
