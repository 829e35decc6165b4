#pragma once

// Closed-form geometry of C^2 and the unit sphere S^3 with its standard
// contact structure. Complex pairs are stored as real 4-vectors in the order
// (x1, y1, x2, y2), so z1 = x1 + i y1 and z2 = x2 + i y2.

#include <array>
#include <complex>

#include <Eigen/Core>

namespace contactgeom {

using Vec4 = Eigen::Vector4d;
using Complex = std::complex<double>;

/// A vector of C^2 attached at some base point.
using AmbientVector = Vec4;

inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kTangencyTolerance = 1e-8;

AmbientVector from_complex(Complex z1, Complex z2);
inline Complex z1(const Vec4& v) { return {v[0], v[1]}; }
inline Complex z2(const Vec4& v) { return {v[2], v[3]}; }

/// Multiplication by i, the complex structure of C^2.
AmbientVector times_i(const Vec4& v);

/// A point of S^3. Construction always lands on the sphere.
class UnitSpherePoint {
 public:
  UnitSpherePoint() : coords_(1.0, 0.0, 0.0, 0.0) {}

  /// Rescales a nonzero vector onto S^3.
  static UnitSpherePoint normalized(const Vec4& v);
  static UnitSpherePoint from_complex(Complex z1, Complex z2);
  static UnitSpherePoint from_real(double x1, double y1, double x2, double y2);

  const Vec4& vec() const { return coords_; }
  Complex z1() const { return contactgeom::z1(coords_); }
  Complex z2() const { return contactgeom::z2(coords_); }
  double x1() const { return coords_[0]; }
  double y1() const { return coords_[1]; }
  double x2() const { return coords_[2]; }
  double y2() const { return coords_[3]; }

 private:
  explicit UnitSpherePoint(const Vec4& v) : coords_(v) {}
  Vec4 coords_;
};

/// (z, w) = z1 conj(w1) + z2 conj(w2).
Complex hermitian(const Vec4& z, const Vec4& w);

/// <z, w> = Re (z, w), the Euclidean product of R^4.
inline double inner(const Vec4& z, const Vec4& w) { return z.dot(w); }

/// Reeb field xi(z) = i z.
AmbientVector reeb(const UnitSpherePoint& z);

/// z^perp = (-conj z2, conj z1).
AmbientVector perp(const UnitSpherePoint& z);

/// The orthonormal frame (z^perp, i z^perp, i z) of T_z S^3.
struct AmbientFrame {
  UnitSpherePoint base;
  AmbientVector f1;
  AmbientVector f2;
  AmbientVector f3;

  /// Coframe values (w^1(v), w^2(v), w^3(v)) = (<v,f1>, <v,f2>, <v,f3>).
  std::array<double, 3> coframe(const Vec4& v) const;
};

AmbientFrame canonical_frame(const UnitSpherePoint& z);

/// Orthogonal projection of a tangent vector onto the contact plane at z.
/// Throws GeometryError(NotTangent) if |<v, z>| > 1e-8.
AmbientVector contact_project(const UnitSpherePoint& z, const Vec4& v);

/// Removes the component along z.
AmbientVector tangent_part(const UnitSpherePoint& z, const Vec4& v);

/// Central-difference check of D f3 = -w^2 f1 + w^1 f2 along the great circle
/// cos(t) z + sin(t) v. Returns the norm of the discrepancy; it decays like h^2.
double frame_derivative_check(const UnitSpherePoint& z, const Vec4& v, double h);

/// The vector w with <w, x> = det[a; b; c; x] for all x.
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c);

/// det[a; b; c; d] with the arguments as rows.
double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

}  // namespace contactgeom
