#pragma once

// Structured parameter grids and the finite-difference stencils used on them.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace contactgeom {

enum class Topology { periodic, chart };

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view s);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Node layout of a parameter rectangle. Periodic axes place n nodes on
/// [lo, hi) with spacing (hi - lo) / n; chart axes place n nodes on [lo, hi]
/// including both ends.
struct GridSpec {
  int nu = 0;
  int nv = 0;
  Interval u_range;
  Interval v_range;
  Topology topology_u = Topology::periodic;
  Topology topology_v = Topology::periodic;

  /// Throws GeometryError(InvalidGrid) unless nu, nv >= 8 and both ranges
  /// have positive length.
  void validate() const;

  double du() const;
  double dv() const;
  double u(int i) const { return u_range.lo + i * du(); }
  double v(int j) const { return v_range.lo + j * dv(); }

  std::size_t size() const { return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(j);
  }
  bool compact() const { return topology_u == Topology::periodic && topology_v == Topology::periodic; }

  /// Same layout with different node counts.
  GridSpec resized(int new_nu, int new_nv) const;
};

inline constexpr int kMinNodesPerAxis = 8;

/// Five-point first-derivative stencil for node i on an axis of n nodes:
/// fourth-order central in the interior and on periodic axes, fourth-order
/// biased at chart boundaries.
struct Stencil {
  std::array<int, 5> nodes{};
  std::array<double, 5> weights{};
};

Stencil first_derivative_stencil(int n, Topology topology, double h, int i);

/// Quadrature weight of node i: h on periodic axes, trapezoid on chart axes.
double quadrature_weight(int n, Topology topology, double h, int i);

/// d/du and d/dv of a grid field at node (i, j). T needs T + T and T * double.
template <class T>
T diff_u(const std::vector<T>& f, const GridSpec& spec, int i, int j) {
  const Stencil s = first_derivative_stencil(spec.nu, spec.topology_u, spec.du(), i);
  T acc = f[spec.index(s.nodes[0], j)] * s.weights[0];
  for (int k = 1; k < 5; ++k) acc = acc + f[spec.index(s.nodes[k], j)] * s.weights[k];
  return acc;
}

template <class T>
T diff_v(const std::vector<T>& f, const GridSpec& spec, int i, int j) {
  const Stencil s = first_derivative_stencil(spec.nv, spec.topology_v, spec.dv(), j);
  T acc = f[spec.index(i, s.nodes[0])] * s.weights[0];
  for (int k = 1; k < 5; ++k) acc = acc + f[spec.index(i, s.nodes[k])] * s.weights[k];
  return acc;
}

/// Whole-field derivatives.
template <class T>
std::vector<T> diff_u(const std::vector<T>& f, const GridSpec& spec) {
  std::vector<T> out(f.size());
  for (int i = 0; i < spec.nu; ++i)
    for (int j = 0; j < spec.nv; ++j) out[spec.index(i, j)] = diff_u(f, spec, i, j);
  return out;
}

template <class T>
std::vector<T> diff_v(const std::vector<T>& f, const GridSpec& spec) {
  std::vector<T> out(f.size());
  for (int i = 0; i < spec.nu; ++i)
    for (int j = 0; j < spec.nv; ++j) out[spec.index(i, j)] = diff_v(f, spec, i, j);
  return out;
}

}  // namespace contactgeom
