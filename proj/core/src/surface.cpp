#include "contactgeom/surface.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "contactgeom/errors.hpp"
#include "contactgeom/parallel.hpp"

namespace contactgeom {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string node_name(int i, int j) {
  return "node (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

Vec4 stencil_sum(const SurfaceGrid& grid, const Stencil& s, int fixed, bool along_u) {
  Vec4 acc = Vec4::Zero();
  for (int k = 0; k < 5; ++k) {
    const UnitSpherePoint& p = along_u ? grid.at(s.nodes[k], fixed) : grid.at(fixed, s.nodes[k]);
    acc += s.weights[k] * p.vec();
  }
  return acc;
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a > std::numbers::pi) a -= two_pi;
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

AdaptedFramePoint masked_frame() {
  const Vec4 nan4 = Vec4::Constant(kNaN);
  AdaptedFramePoint f{nan4, nan4, nan4, kNaN, kNaN, true};
  return f;
}

}  // namespace

std::string_view to_string(PartialsSource s) {
  switch (s) {
    case PartialsSource::analytic: return "analytic";
    case PartialsSource::high_order_difference: return "high_order_difference";
    case PartialsSource::grid_difference: return "grid_difference";
  }
  return "unknown";
}

SurfaceGrid sample(const Immersion& immersion, const GridSpec& spec, std::string label) {
  spec.validate();
  if (!immersion.point) throw GeometryError(ErrorKind::InvalidArgument, "immersion has no point map");

  SurfaceGrid grid;
  grid.spec = spec;
  grid.label = std::move(label);
  grid.points.resize(spec.size());

  const bool analytic = immersion.has_first_partials();
  const bool second = analytic && immersion.has_second_partials();
  GridPartials partials;
  if (analytic) {
    partials.du.resize(spec.size());
    partials.dv.resize(spec.size());
    if (second) {
      partials.duu.resize(spec.size());
      partials.duv.resize(spec.size());
      partials.dvv.resize(spec.size());
    }
  }

  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      const double u = spec.u(i);
      const double v = spec.v(j);
      const Vec4 p = immersion.point(u, v);
      const double norm = p.norm();
      if (!std::isfinite(norm) || std::abs(norm - 1.0) > kOffSphereTolerance) {
        throw GeometryError(ErrorKind::OffSphere, node_name(i, j) + " has norm " + std::to_string(norm));
      }
      const std::size_t k = spec.index(i, j);
      grid.points[k] = UnitSpherePoint::normalized(p);
      if (analytic) {
        partials.du[k] = tangent_part(grid.points[k], immersion.du(u, v));
        partials.dv[k] = tangent_part(grid.points[k], immersion.dv(u, v));
        if (second) {
          partials.duu[k] = immersion.duu(u, v);
          partials.duv[k] = immersion.duv(u, v);
          partials.dvv[k] = immersion.dvv(u, v);
        }
      }
    }
  }
  if (analytic) {
    grid.partials = std::move(partials);
    grid.partials_kind = immersion.partials_kind;
  }
  return grid;
}

TangentPair tangent_pair(const SurfaceGrid& grid, int i, int j) {
  const GridSpec& spec = grid.spec;
  const UnitSpherePoint& z = grid.at(i, j);
  TangentPair t;
  if (grid.partials) {
    t.xu = grid.partials->du[spec.index(i, j)];
    t.xv = grid.partials->dv[spec.index(i, j)];
  } else {
    t.xu = stencil_sum(grid, first_derivative_stencil(spec.nu, spec.topology_u, spec.du(), i), j, true);
    t.xv = stencil_sum(grid, first_derivative_stencil(spec.nv, spec.topology_v, spec.dv(), j), i, false);
  }
  t.xu = tangent_part(z, t.xu);
  t.xv = tangent_part(z, t.xv);
  const double gram = t.xu.squaredNorm() * t.xv.squaredNorm() - std::pow(t.xu.dot(t.xv), 2);
  if (!(gram >= kMinGramDeterminant)) {
    throw GeometryError(ErrorKind::DegenerateParametrization,
                        node_name(i, j) + " has Gram determinant " + std::to_string(gram));
  }
  return t;
}

void AdaptedFramePoint::flip() {
  e1 = -e1;
  e2 = -e2;
  signed_beta = signed_beta >= 0.0 ? std::numbers::pi - signed_beta : -std::numbers::pi - signed_beta;
  beta = std::abs(wrap_angle(signed_beta));
}

AdaptedFramePoint adapted_frame(const UnitSpherePoint& z, const Vec4& xu, const Vec4& xv) {
  const Vec4& p = z.vec();
  Vec4 normal = cross4(p, xu, xv);
  const double normal_norm = normal.norm();
  if (!(normal_norm > 0.0)) {
    throw GeometryError(ErrorKind::DegenerateParametrization, "tangent vectors are dependent");
  }
  normal /= normal_norm;

  const Vec4 xi = times_i(p);
  if (std::abs(inner(xi, normal)) > kDegenerateContact) {
    throw GeometryError(ErrorKind::DegenerateContact, "tangent plane coincides with the contact plane");
  }

  AdaptedFramePoint f;
  f.e1 = cross4(p, xi, normal).normalized();
  if (inner(f.e1, xu) < 0.0) f.e1 = -f.e1;
  // det[z, e1, e2, n] > 0 keeps (e1, e2) oriented like (Xu, Xv).
  f.e2 = -cross4(p, f.e1, normal);
  // The canonical frame satisfies det[z, f1, f2, f3] = +1.
  f.e3 = cross4(p, f.e1, f.e2);
  f.signed_beta = std::atan2(inner(f.e2, times_i(f.e1)), inner(f.e2, xi));
  f.beta = std::abs(f.signed_beta);
  return f;
}

FrameField contact_angle_field(const SurfaceGrid& grid) {
  const GridSpec& spec = grid.spec;
  const std::size_t n = spec.size();

  FrameField field;
  field.spec = spec;
  field.tangents.resize(n);
  field.frames.resize(n);
  field.masked.assign(n, 0);

  parallel_for(static_cast<std::size_t>(spec.nu), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < spec.nv; ++j) {
      const std::size_t k = spec.index(i, j);
      field.tangents[k] = tangent_pair(grid, i, j);
      try {
        field.frames[k] = adapted_frame(grid.at(i, j), field.tangents[k].xu, field.tangents[k].xv);
      } catch (const GeometryError& e) {
        if (e.kind() != ErrorKind::DegenerateContact) throw;
        field.frames[k] = masked_frame();
        field.masked[k] = 1;
      }
    }
  });

  for (auto m : field.masked) field.masked_count += m;
  if (field.masked_count > kMaxMaskedFraction * static_cast<double>(n)) {
    throw GeometryError(ErrorKind::DegenerateContact,
                        std::to_string(field.masked_count) + " of " + std::to_string(n) +
                            " nodes have a tangent plane equal to the contact plane");
  }

  // Sequential flood fill of the e1 sign.
  std::vector<std::uint8_t> fixed(n, 0);
  auto neighbours = [&](int i, int j) {
    std::vector<std::pair<int, int>> out;
    out.reserve(4);
    auto add = [&](int a, int b) {
      if (spec.topology_u == Topology::periodic) a = (a + spec.nu) % spec.nu;
      if (spec.topology_v == Topology::periodic) b = (b + spec.nv) % spec.nv;
      if (a < 0 || a >= spec.nu || b < 0 || b >= spec.nv) return;
      if (a == i && b == j) return;
      out.emplace_back(a, b);
    };
    add(i - 1, j);
    add(i + 1, j);
    add(i, j - 1);
    add(i, j + 1);
    return out;
  };

  bool seeded = false;
  for (std::size_t start = 0; start < n; ++start) {
    if (field.masked[start] || fixed[start]) continue;
    if (!seeded) {
      field.seed = start;
      seeded = true;
    }
    fixed[start] = 1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      const int i = static_cast<int>(k / static_cast<std::size_t>(spec.nv));
      const int j = static_cast<int>(k % static_cast<std::size_t>(spec.nv));
      for (auto [a, b] : neighbours(i, j)) {
        const std::size_t m = spec.index(a, b);
        if (field.masked[m] || fixed[m]) continue;
        double alignment = 0.0;
        for (auto [c, d] : neighbours(a, b)) {
          const std::size_t q = spec.index(c, d);
          if (fixed[q]) alignment += inner(field.frames[m].e1, field.frames[q].e1);
        }
        AdaptedFramePoint& f = field.frames[m];
        if (alignment < 0.0) f.flip();
        const double parent = field.frames[k].signed_beta;
        f.signed_beta += 2.0 * std::numbers::pi * std::round((parent - f.signed_beta) / (2.0 * std::numbers::pi));
        fixed[m] = 1;
        queue.push_back(m);
      }
    }
  }

  field.beta.resize(n);
  field.signed_beta.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    field.beta[k] = field.frames[k].beta;
    field.signed_beta[k] = field.frames[k].signed_beta;
  }
  return field;
}

}  // namespace contactgeom
