#include "contactgeom/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "contactgeom/errors.hpp"

namespace contactgeom {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// (a e^{iu}, b e^{iv}) with its partials.
Immersion product_torus(double a, double b) {
  Immersion im;
  im.point = [a, b](double u, double v) {
    return Vec4(a * std::cos(u), a * std::sin(u), b * std::cos(v), b * std::sin(v));
  };
  im.du = [a](double u, double) { return Vec4(-a * std::sin(u), a * std::cos(u), 0.0, 0.0); };
  im.dv = [b](double, double v) { return Vec4(0.0, 0.0, -b * std::sin(v), b * std::cos(v)); };
  im.duu = [a](double u, double) { return Vec4(-a * std::cos(u), -a * std::sin(u), 0.0, 0.0); };
  im.duv = [](double, double) { return Vec4::Zero().eval(); };
  im.dvv = [b](double, double v) { return Vec4(0.0, 0.0, -b * std::cos(v), -b * std::sin(v)); };
  return im;
}

GridSpec torus_grid() {
  return GridSpec{64, 64, {0.0, kTwoPi}, {0.0, kTwoPi}, Topology::periodic, Topology::periodic};
}

FieldTruth constant(double c) {
  return [c](double, double) { return c; };
}

std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

/// Sixth-order central difference with step h.
Vec4 central6(const std::function<Vec4(double)>& f, double x, double h) {
  return (-f(x - 3 * h) + 9.0 * f(x - 2 * h) - 45.0 * f(x - h) + 45.0 * f(x + h) - 9.0 * f(x + 2 * h) +
          f(x + 3 * h)) /
         (60.0 * h);
}

constexpr double kPerturbStep = 1e-3;

std::vector<ParamSpec> perturbation_params() {
  return {{"eps", 0.0, "amplitude of the normal bump eps sin(m u) sin(n v), |eps| < 0.2"},
          {"m", 1.0, "bump frequency in u"},
          {"n", 1.0, "bump frequency in v"}};
}

}  // namespace

SurfaceGrid CatalogEntry::sample(int nu, int nv) const {
  return contactgeom::sample(immersion, recommended.resized(nu, nv), label());
}

std::string CatalogEntry::label() const {
  if (values.empty()) return name;
  std::string out = name + "(";
  bool first = true;
  for (const auto& [k, v] : values) {
    if (!first) out += ",";
    out += k + "=" + format_value(v);
    first = false;
  }
  return out + ")";
}

CatalogEntry clifford() {
  const double a = std::sqrt(2.0) / 2.0;
  CatalogEntry e;
  e.name = "clifford";
  e.description = "Clifford torus (sqrt2/2)(e^{iu}, e^{iv}), flat and minimal";
  e.params = perturbation_params();
  e.immersion = product_torus(a, a);
  e.recommended = torus_grid();
  e.truth.beta = constant(0.0);
  e.truth.signed_beta = constant(0.0);
  e.truth.gaussian_curvature = constant(0.0);
  e.truth.mean_curvature = constant(0.0);
  e.truth.shape_operator = [](double, double) { return (Mat2() << 0.0, -1.0, -1.0, 0.0).finished(); };
  e.truth.notes = "beta = 0, K = 0, H = 0, S = [[0,-1],[-1,0]]";
  return e;
}

CatalogEntry geodesic_sphere() {
  CatalogEntry e;
  e.name = "geodesic_sphere";
  e.description = "great sphere y2 = 0 in the chart (theta, phi), theta in [0.2, pi-0.2]";
  Immersion& im = e.immersion;
  im.point = [](double t, double p) {
    return Vec4(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t), 0.0);
  };
  im.du = [](double t, double p) {
    return Vec4(std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), -std::sin(t), 0.0);
  };
  im.dv = [](double t, double p) {
    return Vec4(-std::sin(t) * std::sin(p), std::sin(t) * std::cos(p), 0.0, 0.0);
  };
  im.duu = [](double t, double p) {
    return Vec4(-std::sin(t) * std::cos(p), -std::sin(t) * std::sin(p), -std::cos(t), 0.0);
  };
  im.duv = [](double t, double p) {
    return Vec4(-std::cos(t) * std::sin(p), std::cos(t) * std::cos(p), 0.0, 0.0);
  };
  im.dvv = [](double t, double p) {
    return Vec4(-std::sin(t) * std::cos(p), -std::sin(t) * std::sin(p), 0.0, 0.0);
  };
  e.recommended = GridSpec{64, 64, {0.2, kPi - 0.2}, {0.0, kTwoPi}, Topology::chart, Topology::periodic};
  e.truth.beta = [](double t, double) { return std::abs(0.5 * kPi - t); };
  e.truth.signed_beta = [](double t, double) { return 0.5 * kPi - t; };
  e.truth.gaussian_curvature = constant(1.0);
  e.truth.mean_curvature = constant(0.0);
  e.truth.shape_operator = [](double, double) { return Mat2::Zero().eval(); };
  e.truth.notes =
      "K = 1, H = 0, S = 0; the measured angle is |pi/2 - theta| = arcsin|x2|, "
      "not arccos(x2); xi is tangent along the equator x2 = 0";
  return e;
}

CatalogEntry r_torus(double r) {
  if (!(r > 0.05 && r < 0.5 * kPi - 0.05)) {
    throw GeometryError(ErrorKind::RangeError, "r = " + format_value(r) + " outside (0.05, pi/2 - 0.05)");
  }
  CatalogEntry e;
  e.name = "rtorus";
  e.description = "product torus (cos r e^{iu}, sin r e^{iv}); minimal only at r = pi/4";
  e.params = perturbation_params();
  e.params.insert(e.params.begin(), ParamSpec{"r", 0.25 * kPi, "radius parameter in (0.05, pi/2 - 0.05)"});
  e.values["r"] = r;
  e.immersion = product_torus(std::cos(r), std::sin(r));
  e.recommended = torus_grid();
  const double t = std::tan(r);
  const double c = 1.0 / t;
  // Principal curvatures tan r and -cot r in the frame (e1, e2), whose e1
  // direction mixes the two circles.
  const double h = 0.5 * (c - t);
  e.truth.beta = constant(0.0);
  e.truth.signed_beta = constant(0.0);
  e.truth.gaussian_curvature = constant(0.0);
  e.truth.mean_curvature = constant(h);
  e.truth.notes = "beta = 0, K = 0, |H| = |tan r - cot r| / 2";
  return e;
}

CatalogEntry perturb(const CatalogEntry& base, int m, int n, double eps) {
  if (!(std::abs(eps) < kMaxPerturbation)) {
    throw GeometryError(ErrorKind::AmplitudeTooLarge, "|eps| = " + format_value(std::abs(eps)) + " >= 0.2");
  }
  if (eps == 0.0) return base;
  if (!base.recommended.compact()) {
    throw GeometryError(ErrorKind::InvalidArgument, base.name + " is not doubly periodic");
  }
  if (!base.immersion.has_first_partials()) {
    throw GeometryError(ErrorKind::InvalidArgument, base.name + " has no partials to build a normal from");
  }

  CatalogEntry e = base;
  e.values["eps"] = eps;
  e.values["m"] = m;
  e.values["n"] = n;
  e.description = base.description + ", displaced along e3 by eps sin(m u) sin(n v)";
  e.truth = GroundTruth{};
  e.truth.notes = "no closed form";

  const Immersion b = base.immersion;
  PointMap point = [b, m, n, eps](double u, double v) {
    const UnitSpherePoint z = UnitSpherePoint::normalized(b.point(u, v));
    const Vec4 xu = tangent_part(z, b.du(u, v));
    const Vec4 xv = tangent_part(z, b.dv(u, v));
    const Vec4 e3 = cross4(z.vec(), xu, xv).normalized();
    const Vec4 p = z.vec() + eps * std::sin(m * u) * std::sin(n * v) * e3;
    return Vec4(p / p.norm());
  };
  e.immersion = Immersion{};
  e.immersion.point = point;
  e.immersion.partials_kind = PartialsSource::high_order_difference;
  e.immersion.du = [point](double u, double v) {
    return central6([&](double x) { return point(x, v); }, u, kPerturbStep);
  };
  e.immersion.dv = [point](double u, double v) {
    return central6([&](double x) { return point(u, x); }, v, kPerturbStep);
  };
  return e;
}

std::vector<std::string> catalog_names() { return {"clifford", "geodesic_sphere", "rtorus"}; }

CatalogEntry make_entry(std::string_view name, const ParamMap& params) {
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto check_keys = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : params) {
      bool ok = false;
      for (auto a : allowed) ok = ok || k == a;
      if (!ok) {
        throw GeometryError(ErrorKind::InvalidArgument,
                            "surface '" + std::string(name) + "' has no parameter '" + k + "'");
      }
      if (!std::isfinite(v)) throw GeometryError(ErrorKind::InvalidArgument, "parameter '" + k + "' is not finite");
    }
  };
  auto as_int = [&](const std::string& key) {
    const double x = get(key, 1.0);
    if (x != std::round(x)) {
      throw GeometryError(ErrorKind::InvalidArgument, "parameter '" + key + "' must be an integer");
    }
    return static_cast<int>(x);
  };

  CatalogEntry base;
  if (name == "clifford") {
    check_keys({"eps", "m", "n"});
    base = clifford();
  } else if (name == "rtorus") {
    check_keys({"r", "eps", "m", "n"});
    base = r_torus(get("r", 0.25 * kPi));
  } else if (name == "geodesic_sphere") {
    check_keys({});
    return geodesic_sphere();
  } else {
    throw GeometryError(ErrorKind::InvalidArgument, "unknown surface '" + std::string(name) + "'");
  }
  return perturb(base, as_int("m"), as_int("n"), get("eps", 0.0));
}

double partials_deviation(const CatalogEntry& entry, int n) {
  const Immersion& im = entry.immersion;
  if (!im.has_first_partials()) return 0.0;
  const GridSpec spec = entry.recommended.resized(n, n);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u = spec.u(i), v = spec.v(j);
      const Vec4 fu = (im.point(u + h, v) - im.point(u - h, v)) / (2 * h);
      const Vec4 fv = (im.point(u, v + h) - im.point(u, v - h)) / (2 * h);
      worst = std::max(worst, (fu - im.du(u, v)).lpNorm<Eigen::Infinity>());
      worst = std::max(worst, (fv - im.dv(u, v)).lpNorm<Eigen::Infinity>());
    }
  }
  return worst;
}

}  // namespace contactgeom
