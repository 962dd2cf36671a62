#include "hypdiam/hyp_core.hpp"

#include <algorithm>
#include <string>

#include "hypdiam/errors.hpp"

namespace hypdiam {

namespace {

// Below this pairing value arccosh loses about half the digits of d.
constexpr double kChordSwitch = 1.5;
// Beyond this x0 the Lorentz form of a vector is dominated by roundoff.
constexpr double kVerticalSwitch = 1e3;

}  // namespace

Point Point::from_ambient(const Vec3& v) {
  const double q = lorentz(v, v);
  const double scale = v.x0 * v.x0;
  if (!(q > -1e-9 * scale) || (q <= 0.0 && std::abs(v.x0) <= kVerticalSwitch)) {
    throw InputError("Point::from_ambient: vector is not timelike");
  }
  const double sign = v.x0 < 0.0 ? -1.0 : 1.0;
  if (std::abs(v.x0) > kVerticalSwitch) {
    // The form has lost its digits to cancellation; keep the spatial part and
    // lift vertically.
    const Vec3 w = v * sign;
    return Point(Vec3{std::sqrt(1.0 + w.x1 * w.x1 + w.x2 * w.x2), w.x1, w.x2});
  }
  return Point(v * (sign / std::sqrt(q)));
}

Point Point::polar(double r, double theta) {
  const double sh = std::sinh(r);
  return Point(Vec3{std::cosh(r), sh * std::cos(theta), sh * std::sin(theta)});
}

Isometry Isometry::translation(double d) {
  const double c = std::cosh(d);
  const double s = std::sinh(d);
  return Isometry(Matrix{c, s, 0, s, c, 0, 0, 0, 1});
}

Isometry Isometry::rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Isometry(Matrix{1, 0, 0, 0, c, -s, 0, s, c});
}

Point Isometry::apply(const Point& p) const { return Point::from_ambient(apply(p.coords())); }

Point Isometry::image_of_origin() const { return Point::from_ambient(Vec3{m_[0], m_[3], m_[6]}); }

Isometry Isometry::operator*(const Isometry& o) const {
  Matrix r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r[3 * i + j] = m_[3 * i] * o.m_[j] + m_[3 * i + 1] * o.m_[3 + j] + m_[3 * i + 2] * o.m_[6 + j];
    }
  }
  return Isometry(r);
}

Isometry Isometry::inverse() const {
  static constexpr std::array<double, 3> J{1, -1, -1};
  Matrix r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r[3 * i + j] = J[i] * m_[3 * j + i] * J[j];
    }
  }
  return Isometry(r);
}

double Isometry::determinant() const {
  return m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) - m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
         m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
}

double Isometry::lorentz_defect() const {
  static constexpr std::array<double, 3> J{1, -1, -1};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double v = 0.0;
      for (int k = 0; k < 3; ++k) {
        v += m_[3 * k + i] * J[k] * m_[3 * k + j];
      }
      const double target = i == j ? J[i] : 0.0;
      worst = std::max(worst, std::abs(v - target));
    }
  }
  return worst;
}

double Isometry::max_abs_diff(const Isometry& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < m_.size(); ++i) {
    worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
  }
  return worst;
}

GeodesicSegment make_segment(const Point& a, const Point& b) {
  Vec3 n = lorentz_cross(a.coords(), b.coords());
  const double q = -lorentz(n, n);
  if (!(q > 0.0) || distance(a, b) < 1e-15) {
    return GeodesicSegment{a, b, Vec3{}};
  }
  return GeodesicSegment{a, b, n * (1.0 / std::sqrt(q))};
}

GeodesicSegment transform(const Isometry& m, const GeodesicSegment& s) {
  return GeodesicSegment{m.apply(s.a), m.apply(s.b), m.apply(s.normal)};
}

double distance(const Point& p, const Point& q) {
  const double c = lorentz(p.coords(), q.coords());
  if (c >= kChordSwitch) {
    return std::acosh(c);
  }
  const Vec3 d = p.coords() - q.coords();
  const double chord2 = -lorentz(d, d);
  if (!(chord2 > 0.0)) {
    return 0.0;
  }
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

double distance_from_origin(const Point& p) { return std::acosh(std::max(1.0, p.x0())); }

Isometry reflection_in_geodesic(const Vec3& n) {
  const double q = lorentz(n, n);
  if (std::abs(q + 1.0) > 1e-9) {
    throw InputError("reflection_in_geodesic: carrier normal must satisfy <n,n> = -1, got " +
                     std::to_string(q));
  }
  // x + 2 <x, n> n, with <x, n> = x0 n0 - x1 n1 - x2 n2.
  const std::array<double, 3> nv{n.x0, n.x1, n.x2};
  const std::array<double, 3> jn{n.x0, -n.x1, -n.x2};
  Isometry::Matrix m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m[3 * i + j] = (i == j ? 1.0 : 0.0) + 2.0 * nv[i] * jn[j];
    }
  }
  return Isometry(m);
}

double distance_to_geodesic(const Point& p, const Vec3& normal) {
  return std::asinh(std::abs(lorentz(p.coords(), normal)));
}

Point perpendicular_foot(const Point& p, const Vec3& normal) {
  const double h = lorentz(p.coords(), normal);
  return Point::from_ambient(p.coords() + normal * h);
}

double distance_point_to_segment(const Point& p, const GeodesicSegment& s) {
  if (s.degenerate()) {
    return distance(p, s.a);
  }
  // The foot lies between a and b iff the segment makes non-obtuse angles
  // with p at both ends; in pairings, <p,b> <= <a,b><p,a> and symmetrically.
  const double ab = lorentz(s.a.coords(), s.b.coords());
  const double pa = lorentz(p.coords(), s.a.coords());
  const double pb = lorentz(p.coords(), s.b.coords());
  if (pb <= ab * pa && pa <= ab * pb) {
    return distance_to_geodesic(p, s.normal);
  }
  return std::min(distance(p, s.a), distance(p, s.b));
}

}  // namespace hypdiam
