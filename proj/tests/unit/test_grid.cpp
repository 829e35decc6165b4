#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "contactgeom/errors.hpp"
#include "contactgeom/grid.hpp"

using namespace contactgeom;

namespace {

double apply_stencil(const Stencil& s, const std::vector<double>& f) {
  double acc = 0.0;
  for (int k = 0; k < 5; ++k) acc += s.weights[k] * f[s.nodes[k]];
  return acc;
}

}  // namespace

TEST(GridSpec, Validate) {
  GridSpec ok{8, 8, {0, 1}, {0, 1}, Topology::chart, Topology::periodic};
  EXPECT_NO_THROW(ok.validate());
  GridSpec small = ok;
  small.nu = 7;
  EXPECT_THROW(small.validate(), GeometryError);
  GridSpec empty = ok;
  empty.v_range = {1, 1};
  EXPECT_THROW(empty.validate(), GeometryError);
}

TEST(GridSpec, Spacing) {
  GridSpec s{10, 16, {0, 1}, {0, 2 * std::numbers::pi}, Topology::chart, Topology::periodic};
  EXPECT_DOUBLE_EQ(s.du(), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(s.dv(), 2 * std::numbers::pi / 16);
  EXPECT_DOUBLE_EQ(s.u(9), 1.0);
  EXPECT_EQ(s.index(2, 3), 35u);
  EXPECT_FALSE(s.compact());
  EXPECT_EQ(s.resized(20, 20).size(), 400u);
}

TEST(Topology, Strings) {
  EXPECT_EQ(topology_from_string("periodic"), Topology::periodic);
  EXPECT_EQ(topology_from_string("chart"), Topology::chart);
  EXPECT_THROW(topology_from_string("torus"), GeometryError);
}

// Every chart stencil is exact on quartics.
TEST(Stencil, ChartExactOnQuartics) {
  const int n = 12;
  const double h = 0.1;
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    f[i] = 1 - 2 * x + 3 * x * x - x * x * x + 0.5 * x * x * x * x;
  }
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    const double exact = -2 + 6 * x - 3 * x * x + 2 * x * x * x;
    EXPECT_NEAR(apply_stencil(first_derivative_stencil(n, Topology::chart, h, i), f), exact, 1e-11) << "node " << i;
  }
}

TEST(Stencil, PeriodicFourthOrder) {
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    const double h = 2 * std::numbers::pi / n;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::sin(3 * i * h);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      err = std::max(err, std::abs(apply_stencil(first_derivative_stencil(n, Topology::periodic, h, i), f) -
                                   3 * std::cos(3 * i * h)));
    }
    if (prev > 0) EXPECT_GT(std::log2(prev / err), 3.8);
    prev = err;
  }
}

TEST(Quadrature, WeightsSumToLength) {
  double chart = 0.0, periodic = 0.0;
  for (int i = 0; i < 11; ++i) chart += quadrature_weight(11, Topology::chart, 0.1, i);
  for (int i = 0; i < 10; ++i) periodic += quadrature_weight(10, Topology::periodic, 0.1, i);
  EXPECT_NEAR(chart, 1.0, 1e-15);
  EXPECT_NEAR(periodic, 1.0, 1e-15);
}
