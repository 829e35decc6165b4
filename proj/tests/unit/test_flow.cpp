#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "contactgeom/catalog.hpp"
#include "contactgeom/errors.hpp"
#include "contactgeom/flow.hpp"

using namespace contactgeom;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed form: H is constant (cot r - tan r)/2 and the area is 4 pi^2 sin r cos r.
double torus_energy(double r) {
  const double h = 0.5 * (1 / std::tan(r) - std::tan(r));
  return h * h * 4 * kPi * kPi * std::sin(r) * std::cos(r);
}

double golden_min(double a, double b) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  while (b - a > 1e-12) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (torus_energy(c) < torus_energy(d)) b = d;
    else a = c;
  }
  return 0.5 * (a + b);
}

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

TEST(Area, Clifford) { EXPECT_NEAR(area(clifford().sample(64, 64)), 2 * kPi * kPi, 1e-10); }

TEST(Area, RTorus) {
  const double r = 0.5;
  EXPECT_NEAR(area(r_torus(r).sample(32, 32)), 4 * kPi * kPi * std::sin(r) * std::cos(r), 1e-10);
}

TEST(Area, GreatSphereBand) {
  // theta in [0.2, pi - 0.2]: 4 pi cos(0.2), trapezoid in theta.
  EXPECT_NEAR(area(geodesic_sphere().sample(256, 64)), 4 * kPi * std::cos(0.2), 5e-4);
}

TEST(Willmore, CliffordIsCritical) { EXPECT_LT(willmore_energy(clifford().sample(64, 64)), 1e-10); }

TEST(Willmore, RTorusMatchesClosedForm) {
  for (double r : {0.5, 0.7, 1.0}) EXPECT_NEAR(willmore_energy(r_torus(r).sample(256, 256)), torus_energy(r), 1e-5) << r;
}

TEST(Willmore, ClosedFormMinimumAtQuarterPi) { EXPECT_NEAR(golden_min(0.1, 1.4), kPi / 4, 1e-8); }

TEST(Willmore, PerturbedIsPositive) {
  const double e = willmore_energy(make_entry("clifford", {{"eps", 0.1}}).sample(32, 32));
  EXPECT_GT(e, 1e-6);
}

TEST(FlowStep, ZeroDisplacementIsIdentity) {
  const SurfaceGrid g = clifford().sample(16, 16);
  const SurfaceGrid h = flow_step(g, ScalarField(g.points.size(), 0.0), 1.0);
  for (std::size_t k = 0; k < g.points.size(); ++k) EXPECT_NEAR((g.points[k].vec() - h.points[k].vec()).norm(), 0.0, 1e-15);
  EXPECT_FALSE(h.partials.has_value());
}

TEST(FlowStep, ConstantDisplacementMovesAlongTheFamily) {
  const SurfaceGrid g = clifford().sample(32, 32);
  const double c = 1e-3;
  const SurfaceGrid h = flow_step(g, ScalarField(g.points.size(), 1.0), c);
  for (const auto& p : h.points) {
    const double r = std::atan2(std::abs(p.z2()), std::abs(p.z1()));
    EXPECT_NEAR(r, kPi / 4 - c, 1e-8);
  }
}

TEST(FlowStep, StepTooLarge) {
  // z + e3 normalized lands on r = 0, a circle.
  const SurfaceGrid g = clifford().sample(16, 16);
  EXPECT_EQ(kind_of([&] { flow_step(g, ScalarField(g.points.size(), 1.0), 1.0); }), ErrorKind::StepTooLarge);
}

TEST(FlowStep, WrongSize) {
  const SurfaceGrid g = clifford().sample(16, 16);
  EXPECT_EQ(kind_of([&] { flow_step(g, ScalarField(3, 0.0), 1.0); }), ErrorKind::InvalidArgument);
}

TEST(Descend, CliffordAlreadyMinimal) {
  FlowConfig c;
  const FlowReport r = descend(c);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.trace.size(), 1u);
  EXPECT_LT(r.final_max_abs_h, 1e-6);
}

TEST(Descend, EnergyNonIncreasingAndDeterministic) {
  FlowConfig c;
  c.params = {{"eps", 0.1}};
  c.nu = c.nv = 24;
  c.max_iterations = 3;
  const FlowReport a = descend(c), b = descend(c);
  ASSERT_EQ(a.trace.size(), 4u);
  for (std::size_t k = 1; k < a.trace.size(); ++k) EXPECT_LE(a.trace[k].energy, a.trace[k - 1].energy);
  EXPECT_LT(a.final_energy, a.initial_energy);
  EXPECT_FALSE(a.converged);
  EXPECT_EQ(a.stop_reason, "iteration limit");
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) EXPECT_EQ(a.trace[k].energy, b.trace[k].energy);
}

TEST(Descend, ROnlyFindsClifford) {
  FlowConfig c;
  c.surface = "rtorus";
  c.params = {{"r", kPi / 4 + 0.1}};
  c.mode = FlowMode::r_only;
  const FlowReport r = descend(c);
  ASSERT_TRUE(r.final_r.has_value());
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(*r.final_r, golden_min(0.1, 1.4), 1e-6);
  for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LE(r.trace[k].energy, r.trace[k - 1].energy);
}

TEST(Descend, ROnlyRejectsPerturbation) {
  FlowConfig c;
  c.params = {{"eps", 0.1}};
  c.mode = FlowMode::r_only;
  EXPECT_EQ(kind_of([&] { descend(c); }), ErrorKind::InvalidArgument);
}

TEST(Descend, GreatSphereNeedsNoSteps) {
  // e3 is the constant vector (0, 0, 0, 1), so H vanishes on the grid exactly.
  FlowConfig c;
  c.surface = "geodesic_sphere";
  c.tolerance = 1e-12;
  const FlowReport r = descend(c);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.final_max_abs_h, 0.0);
  EXPECT_EQ(theorem_probe(r, r.final_grid).outcome, ProbeOutcome::not_applicable);
}

TEST(Config, Validate) {
  FlowConfig c;
  EXPECT_NO_THROW(c.validate());
  c.step = 0;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::InvalidArgument);
  c = FlowConfig{};
  c.tolerance = -1;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::InvalidArgument);
  c = FlowConfig{};
  c.max_iterations = -1;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::InvalidArgument);
  c = FlowConfig{};
  c.control = 2;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::InvalidArgument);
}

TEST(Config, Names) {
  EXPECT_EQ(descent_variant_from_string("fixed-step"), DescentVariant::fixed_step);
  EXPECT_EQ(descent_variant_from_string(to_string(DescentVariant::backtracking)), DescentVariant::backtracking);
  EXPECT_EQ(flow_mode_from_string("r-only"), FlowMode::r_only);
  EXPECT_EQ(kind_of([&] { flow_mode_from_string("sideways"); }), ErrorKind::InvalidArgument);
}

TEST(Probe, Outcomes) {
  FlowReport r;
  r.converged = false;
  EXPECT_EQ(theorem_probe(r, clifford().sample(32, 32)).outcome, ProbeOutcome::inconclusive);
  r.converged = true;
  const Verdict flat = theorem_probe(r, clifford().sample(32, 32));
  EXPECT_EQ(flat.outcome, ProbeOutcome::pass);
  EXPECT_LT(flat.beta_spread, 1e-10);
  const Verdict sphere = theorem_probe(r, geodesic_sphere().sample(32, 32));
  EXPECT_EQ(sphere.outcome, ProbeOutcome::not_applicable);
  // The equator falls between nodes, so the smallest angle is half a spacing.
  EXPECT_NEAR(sphere.beta_spread, kPi / 2 - 0.2 - 0.5 * (kPi - 0.4) / 31, 1e-12);
}
