#pragma once

// Hyperbolic plane in the hyperboloid model.
//
// Points live on the upper sheet x0^2 - x1^2 - x2^2 = 1, x0 > 0. Geodesics are
// the intersections with planes through the origin, each described by a unit
// spacelike normal n with <n, n> = -1. Isometries are 3x3 matrices preserving
// the Lorentz form J = diag(1, -1, -1).

#include <array>
#include <cmath>

namespace hypdiam {

/// Largest distance any operation accepts as a search radius.
inline constexpr double kMaxRadius = 30.0;
/// Beyond this, cosh-based coordinates carry no useful precision.
inline constexpr double kDistanceCap = 40.0;

struct Vec3 {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x0 + o.x0, x1 + o.x1, x2 + o.x2}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x0 - o.x0, x1 - o.x1, x2 - o.x2}; }
  constexpr Vec3 operator*(double a) const { return {x0 * a, x1 * a, x2 * a}; }
  constexpr Vec3 operator-() const { return {-x0, -x1, -x2}; }
};

/// Lorentz pairing <a, b> = a0 b0 - a1 b1 - a2 b2.
constexpr double lorentz(const Vec3& a, const Vec3& b) {
  return a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2;
}

/// Vector Lorentz-orthogonal to both a and b: J (a x b).
constexpr Vec3 lorentz_cross(const Vec3& a, const Vec3& b) {
  return {a.x1 * b.x2 - a.x2 * b.x1, -(a.x2 * b.x0 - a.x0 * b.x2), -(a.x0 * b.x1 - a.x1 * b.x0)};
}

/// A point on the upper hyperboloid sheet.
class Point {
 public:
  /// The base point (1, 0, 0).
  constexpr Point() = default;

  /// Projects a timelike vector onto the upper sheet. Throws InputError if v is
  /// not timelike.
  static Point from_ambient(const Vec3& v);

  /// Point at distance r from the base point in direction theta.
  static Point polar(double r, double theta);

  constexpr const Vec3& coords() const { return c_; }
  constexpr double x0() const { return c_.x0; }
  constexpr double x1() const { return c_.x1; }
  constexpr double x2() const { return c_.x2; }

  /// x0^2 - x1^2 - x2^2 - 1.
  double constraint_residual() const { return lorentz(c_, c_) - 1.0; }

 private:
  explicit constexpr Point(const Vec3& c) : c_(c) {}
  Vec3 c_{1.0, 0.0, 0.0};
};

/// A Lorentz transformation preserving the upper sheet, stored row-major.
class Isometry {
 public:
  using Matrix = std::array<double, 9>;

  constexpr Isometry() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}
  explicit constexpr Isometry(const Matrix& m) : m_(m) {}

  static Isometry translation(double d);  // along the x1 axis
  static Isometry rotation(double theta);  // about the base point

  constexpr double operator()(int r, int c) const { return m_[3 * r + c]; }
  constexpr const Matrix& matrix() const { return m_; }

  constexpr Vec3 apply(const Vec3& v) const {
    return {m_[0] * v.x0 + m_[1] * v.x1 + m_[2] * v.x2, m_[3] * v.x0 + m_[4] * v.x1 + m_[5] * v.x2,
            m_[6] * v.x0 + m_[7] * v.x1 + m_[8] * v.x2};
  }

  /// Applies and renormalizes onto the hyperboloid.
  Point apply(const Point& p) const;

  /// Image of the base point (first column), renormalized.
  Point image_of_origin() const;

  Isometry operator*(const Isometry& o) const;
  /// J M^T J.
  Isometry inverse() const;
  double determinant() const;
  /// max |M^T J M - J| entry.
  double lorentz_defect() const;
  /// max |M - other| entry.
  double max_abs_diff(const Isometry& other) const;

 private:
  Matrix m_;
};

/// A geodesic segment and the unit spacelike normal of its carrier geodesic.
struct GeodesicSegment {
  Point a;
  Point b;
  Vec3 normal;  // <normal, normal> = -1; zero vector for a degenerate segment

  bool degenerate() const { return normal.x0 == 0.0 && normal.x1 == 0.0 && normal.x2 == 0.0; }
};

GeodesicSegment make_segment(const Point& a, const Point& b);

/// Image of a segment under an isometry.
GeodesicSegment transform(const Isometry& m, const GeodesicSegment& s);

/// Hyperbolic distance. Uses arccosh of the Lorentz pairing, switching to the
/// chord form 2 asinh(|p - q| / 2) for nearby points where arccosh loses digits.
double distance(const Point& p, const Point& q);

/// Distance from the base point, arccosh(x0).
double distance_from_origin(const Point& p);

/// Reflection in the geodesic with unit spacelike normal n:
/// x -> x + 2 <x, n> n. Throws InputError unless <n, n> = -1 within 1e-9.
Isometry reflection_in_geodesic(const Vec3& normal);

/// Distance from p to the full geodesic with unit normal n: asinh |<p, n>|.
double distance_to_geodesic(const Point& p, const Vec3& normal);

/// Foot of the perpendicular from p onto the geodesic with unit normal n.
Point perpendicular_foot(const Point& p, const Vec3& normal);

/// min over q in s of distance(p, q).
double distance_point_to_segment(const Point& p, const GeodesicSegment& s);

}  // namespace hypdiam
