#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "contactgeom/catalog.hpp"
#include "contactgeom/errors.hpp"

using namespace contactgeom;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no GeometryError thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Catalog, Names) {
  const auto names = catalog_names();
  ASSERT_EQ(names.size(), 3u);
  for (const auto& n : names) EXPECT_EQ(make_entry(n).name, n);
}

TEST(Catalog, AnalyticPartialsAgreeWithDifferences) {
  for (const auto& n : catalog_names()) EXPECT_LT(partials_deviation(make_entry(n)), 1e-8) << n;
  EXPECT_LT(partials_deviation(r_torus(0.3)), 1e-8);
}

TEST(Catalog, PerturbedPartials) {
  const CatalogEntry e = make_entry("rtorus", {{"r", 0.7}, {"eps", 0.15}, {"m", 2}, {"n", 3}});
  EXPECT_EQ(e.immersion.partials_kind, PartialsSource::high_order_difference);
  EXPECT_FALSE(e.immersion.has_second_partials());
  EXPECT_LT(partials_deviation(e), 1e-7);
}

TEST(Catalog, SecondPartialsAgreeWithDifferences) {
  for (const CatalogEntry& e : {clifford(), geodesic_sphere(), r_torus(0.5)}) {
    ASSERT_TRUE(e.immersion.has_second_partials());
    const double u = 0.7, v = 1.3, h = 1e-5;
    const Vec4 duu = (e.immersion.du(u + h, v) - e.immersion.du(u - h, v)) / (2 * h);
    const Vec4 duv = (e.immersion.du(u, v + h) - e.immersion.du(u, v - h)) / (2 * h);
    const Vec4 dvv = (e.immersion.dv(u, v + h) - e.immersion.dv(u, v - h)) / (2 * h);
    EXPECT_LT((duu - e.immersion.duu(u, v)).norm(), 1e-8) << e.name;
    EXPECT_LT((duv - e.immersion.duv(u, v)).norm(), 1e-8) << e.name;
    EXPECT_LT((dvv - e.immersion.dvv(u, v)).norm(), 1e-8) << e.name;
  }
}

TEST(Catalog, CliffordPoints) {
  const CatalogEntry e = clifford();
  const double a = std::sqrt(2.0) / 2;
  const Vec4 p = e.immersion.point(kPi / 2, kPi);
  EXPECT_NEAR((p - Vec4(0, a, -a, 0)).norm(), 0.0, 1e-15);
  EXPECT_TRUE(e.recommended.compact());
}

TEST(Catalog, SphereTruthIsTheMeasuredAngle) {
  const CatalogEntry e = geodesic_sphere();
  EXPECT_DOUBLE_EQ(e.truth.beta(kPi / 2, 0.3), 0.0);
  EXPECT_NEAR(e.truth.beta(0.5, 0.3), kPi / 2 - 0.5, 1e-15);
  EXPECT_NEAR(e.truth.signed_beta(2.5, 0.3), kPi / 2 - 2.5, 1e-15);
  EXPECT_DOUBLE_EQ(e.truth.gaussian_curvature(1, 1), 1.0);
  EXPECT_FALSE(e.recommended.compact());
}

TEST(Catalog, RTorusTruth) {
  const double r = 0.6;
  const CatalogEntry e = r_torus(r);
  EXPECT_NEAR(std::abs(e.truth.mean_curvature(0, 0)), std::abs(std::tan(r) - 1 / std::tan(r)) / 2, 1e-15);
  EXPECT_DOUBLE_EQ(e.truth.gaussian_curvature(0, 0), 0.0);
  EXPECT_EQ(e.label(), "rtorus(r=0.6)");
}

TEST(Catalog, RTorusRange) {
  EXPECT_EQ(kind_of([] { r_torus(0.04); }), ErrorKind::RangeError);
  EXPECT_EQ(kind_of([] { r_torus(kPi / 2 - 0.04); }), ErrorKind::RangeError);
  EXPECT_NO_THROW(r_torus(0.06));
}

TEST(Catalog, Perturbation) {
  EXPECT_EQ(kind_of([] { perturb(clifford(), 1, 1, 0.2); }), ErrorKind::AmplitudeTooLarge);
  EXPECT_EQ(kind_of([] { perturb(clifford(), 1, 1, -0.25); }), ErrorKind::AmplitudeTooLarge);
  EXPECT_EQ(kind_of([] { perturb(geodesic_sphere(), 1, 1, 0.1); }), ErrorKind::InvalidArgument);
  const CatalogEntry same = perturb(clifford(), 1, 1, 0.0);
  EXPECT_EQ(same.label(), "clifford");
  EXPECT_EQ(same.immersion.partials_kind, PartialsSource::analytic);

  const CatalogEntry e = perturb(clifford(), 1, 1, 0.1);
  // Nodes with sin u sin v = 0 stay put; elsewhere they leave the torus.
  EXPECT_NEAR((e.immersion.point(0, 1.0) - clifford().immersion.point(0, 1.0)).norm(), 0.0, 1e-15);
  const Vec4 p = e.immersion.point(kPi / 2, kPi / 2);
  EXPECT_NEAR(p.norm(), 1.0, 1e-15);
  EXPECT_GT(std::abs(std::abs(Complex(p[0], p[1])) - std::sqrt(0.5)), 1e-2);
  EXPECT_TRUE(e.truth.notes.find("no closed form") != std::string::npos);
}

TEST(Catalog, MakeEntryParameters) {
  EXPECT_EQ(kind_of([] { make_entry("klein"); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { make_entry("clifford", {{"r", 0.3}}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { make_entry("geodesic_sphere", {{"eps", 0.1}}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { make_entry("clifford", {{"eps", 0.1}, {"m", 1.5}}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { make_entry("rtorus", {{"r", 2.0}}); }), ErrorKind::RangeError);
  const CatalogEntry e = make_entry("rtorus", {{"r", 0.885}});
  EXPECT_EQ(e.label(), "rtorus(r=0.885)");
  EXPECT_DOUBLE_EQ(e.values.at("r"), 0.885);
}

TEST(Catalog, SampleUsesRecommendedLayout) {
  const CatalogEntry e = geodesic_sphere();
  const SurfaceGrid g = e.sample(20, 40);
  EXPECT_EQ(g.spec.nu, 20);
  EXPECT_EQ(g.spec.nv, 40);
  EXPECT_DOUBLE_EQ(g.spec.u_range.lo, e.recommended.u_range.lo);
  EXPECT_EQ(g.label, "geodesic_sphere");
  EXPECT_EQ(g.partials_kind, PartialsSource::analytic);
}
