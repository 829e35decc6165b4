#include "contactgeom/grid.hpp"

#include <cmath>

#include "contactgeom/errors.hpp"

namespace contactgeom {

std::string_view to_string(Topology t) { return t == Topology::periodic ? "periodic" : "chart"; }

Topology topology_from_string(std::string_view s) {
  if (s == "periodic") return Topology::periodic;
  if (s == "chart") return Topology::chart;
  throw GeometryError(ErrorKind::ParseError, "unknown topology '" + std::string(s) + "'");
}

void GridSpec::validate() const {
  if (nu < kMinNodesPerAxis || nv < kMinNodesPerAxis) {
    throw GeometryError(ErrorKind::InvalidGrid, "grids need at least 8 nodes per axis, got " +
                                                    std::to_string(nu) + "x" + std::to_string(nv));
  }
  if (!(u_range.length() > 0.0) || !(v_range.length() > 0.0)) {
    throw GeometryError(ErrorKind::InvalidGrid, "parameter ranges must have positive length");
  }
}

double GridSpec::du() const {
  return topology_u == Topology::periodic ? u_range.length() / nu : u_range.length() / (nu - 1);
}

double GridSpec::dv() const {
  return topology_v == Topology::periodic ? v_range.length() / nv : v_range.length() / (nv - 1);
}

GridSpec GridSpec::resized(int new_nu, int new_nv) const {
  GridSpec s = *this;
  s.nu = new_nu;
  s.nv = new_nv;
  return s;
}

Stencil first_derivative_stencil(int n, Topology topology, double h, int i) {
  Stencil s;
  const double inv = 1.0 / (12.0 * h);
  auto set = [&](std::array<int, 5> nodes, std::array<double, 5> w) {
    s.nodes = nodes;
    for (int k = 0; k < 5; ++k) s.weights[k] = w[k] * inv;
  };
  if (topology == Topology::periodic) {
    auto wrap = [n](int k) { return ((k % n) + n) % n; };
    set({wrap(i - 2), wrap(i - 1), i, wrap(i + 1), wrap(i + 2)}, {1.0, -8.0, 0.0, 8.0, -1.0});
    return s;
  }
  if (i == 0) {
    set({0, 1, 2, 3, 4}, {-25.0, 48.0, -36.0, 16.0, -3.0});
  } else if (i == 1) {
    set({0, 1, 2, 3, 4}, {-3.0, -10.0, 18.0, -6.0, 1.0});
  } else if (i == n - 2) {
    set({n - 1, n - 2, n - 3, n - 4, n - 5}, {3.0, 10.0, -18.0, 6.0, -1.0});
  } else if (i == n - 1) {
    set({n - 1, n - 2, n - 3, n - 4, n - 5}, {25.0, -48.0, 36.0, -16.0, 3.0});
  } else {
    set({i - 2, i - 1, i, i + 1, i + 2}, {1.0, -8.0, 0.0, 8.0, -1.0});
  }
  return s;
}

double quadrature_weight(int n, Topology topology, double h, int i) {
  if (topology == Topology::chart && (i == 0 || i == n - 1)) return 0.5 * h;
  return h;
}

}  // namespace contactgeom
