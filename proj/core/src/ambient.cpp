#include "contactgeom/ambient.hpp"

#include <cmath>

#include <Eigen/LU>

#include "contactgeom/errors.hpp"

namespace contactgeom {

AmbientVector from_complex(Complex a, Complex b) {
  return Vec4(a.real(), a.imag(), b.real(), b.imag());
}

AmbientVector times_i(const Vec4& v) { return Vec4(-v[1], v[0], -v[3], v[2]); }

UnitSpherePoint UnitSpherePoint::normalized(const Vec4& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw GeometryError(ErrorKind::OffSphere, "cannot normalize a zero or non-finite vector");
  }
  return UnitSpherePoint(v / n);
}

UnitSpherePoint UnitSpherePoint::from_complex(Complex a, Complex b) {
  return normalized(contactgeom::from_complex(a, b));
}

UnitSpherePoint UnitSpherePoint::from_real(double x1, double y1, double x2, double y2) {
  return normalized(Vec4(x1, y1, x2, y2));
}

Complex hermitian(const Vec4& z, const Vec4& w) {
  return z1(z) * std::conj(z1(w)) + z2(z) * std::conj(z2(w));
}

AmbientVector reeb(const UnitSpherePoint& z) { return times_i(z.vec()); }

AmbientVector perp(const UnitSpherePoint& z) {
  const Vec4& p = z.vec();
  return Vec4(-p[2], p[3], p[0], -p[1]);
}

std::array<double, 3> AmbientFrame::coframe(const Vec4& v) const {
  return {inner(v, f1), inner(v, f2), inner(v, f3)};
}

AmbientFrame canonical_frame(const UnitSpherePoint& z) {
  const AmbientVector p = perp(z);
  return AmbientFrame{z, p, times_i(p), reeb(z)};
}

AmbientVector tangent_part(const UnitSpherePoint& z, const Vec4& v) {
  return v - inner(v, z.vec()) * z.vec();
}

AmbientVector contact_project(const UnitSpherePoint& z, const Vec4& v) {
  if (std::abs(inner(v, z.vec())) > kTangencyTolerance) {
    throw GeometryError(ErrorKind::NotTangent, "vector is not tangent to S^3 at the base point");
  }
  const AmbientVector xi = reeb(z);
  return v - inner(v, xi) * xi;
}

double frame_derivative_check(const UnitSpherePoint& z, const Vec4& v, double h) {
  if (v.squaredNorm() == 0.0) return 0.0;
  auto f3_along = [&](double t) { return times_i(std::cos(t) * z.vec() + std::sin(t) * v); };
  const Vec4 derivative = tangent_part(z, (f3_along(h) - f3_along(-h)) / (2.0 * h));
  const AmbientFrame frame = canonical_frame(z);
  const auto w = frame.coframe(v);
  const Vec4 expected = -w[1] * frame.f1 + w[0] * frame.f2;
  return (derivative - expected).norm();
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  Eigen::Matrix4d m;
  m.row(0) = a.transpose();
  m.row(1) = b.transpose();
  m.row(2) = c.transpose();
  m.row(3) = d.transpose();
  return m.determinant();
}

Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  // Cofactor expansion of det[a; b; c; e_k] along the last row.
  auto minor3 = [&](int skip) {
    double m[3][3];
    for (int r = 0; r < 3; ++r) {
      const Vec4& row = r == 0 ? a : (r == 1 ? b : c);
      int col = 0;
      for (int k = 0; k < 4; ++k) {
        if (k != skip) m[r][col++] = row[k];
      }
    }
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  Vec4 w;
  for (int k = 0; k < 4; ++k) {
    const double sign = ((3 + k) % 2 == 0) ? 1.0 : -1.0;
    w[k] = sign * minor3(k);
  }
  return w;
}

}  // namespace contactgeom
