#include "hypdiam/hexagon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <quadmath.h>

#include "hypdiam/errors.hpp"

namespace hypdiam {

namespace {

// The chain is solved and walked in quad precision: an angular error at the
// start of a side of length L is amplified by sinh(L), and long sides reach
// L = 30.
using quad = __float128;
using QuadPoint = std::array<quad, 3>;

constexpr double kClosingTol = 1e-6;
const quad kQuadPi = acosq(quad(-1));

struct QuadFrame {
  std::array<quad, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  QuadFrame operator*(const QuadFrame& o) const {
    QuadFrame r;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        r.m[3 * i + j] = m[3 * i] * o.m[j] + m[3 * i + 1] * o.m[3 + j] + m[3 * i + 2] * o.m[6 + j];
      }
    }
    return r;
  }
  quad trace() const { return m[0] + m[4] + m[8]; }
  QuadPoint origin_image() const { return {m[0], m[3], m[6]}; }
};

QuadFrame quad_translation(quad d) {
  const quad c = coshq(d);
  const quad s = sinhq(d);
  return QuadFrame{{c, s, 0, s, c, 0, 0, 0, 1}};
}

QuadFrame quad_rotation(quad theta) {
  const quad c = cosq(theta);
  const quad s = sinq(theta);
  return QuadFrame{{1, 0, 0, 0, c, -s, 0, s, c}};
}

// One third of the chain: walk s, turn left, walk t, turn left. The full chain
// closes iff this is a rotation by 2 pi / 3, i.e. iff its trace is zero.
QuadFrame third_of_chain(quad s, quad t) {
  const QuadFrame turn = quad_rotation(kQuadPi / 2);
  return quad_translation(s) * turn * quad_translation(t) * turn;
}

quad solve_short_side(quad s) {
  // trace = -1 at t = 0 (a half turn) and grows without bound.
  quad lo = 0;
  quad hi = 1;
  while (third_of_chain(s, hi).trace() <= 0) {
    lo = hi;
    hi *= 2;
    if (hi > 2 * kDistanceCap) {
      throw ConsistencyError("build_hexagon: no short side closes the chain");
    }
  }
  // Bisect well past 1e-12; large ell needs t to full double precision.
  for (int it = 0; it < 240 && hi - lo > quad(1e-32) * (1 + hi); ++it) {
    const quad mid = (lo + hi) / 2;
    if (third_of_chain(s, mid).trace() <= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

QuadPoint quad_polar(quad r, quad theta) {
  return {coshq(r), sinhq(r) * cosq(theta), sinhq(r) * sinq(theta)};
}

quad quad_distance(const QuadPoint& p, const QuadPoint& q) {
  const quad d0 = p[0] - q[0];
  const quad d1 = p[1] - q[1];
  const quad d2 = p[2] - q[2];
  const quad chord2 = d1 * d1 + d2 * d2 - d0 * d0;
  return chord2 > 0 ? 2 * asinhq(sqrtq(chord2) / 2) : quad(0);
}

double side_length(const GeodesicSegment& seg) { return distance(seg.a, seg.b); }

}  // namespace

double cosh_short_side(double ell) {
  const double ch = std::cosh(ell / 2);
  return ch / (ch - 1.0);
}

HexagonGeometry build_hexagon(double ell) {
  if (!(ell >= kMinEll && ell <= kMaxEll)) {
    throw InputError("build_hexagon: ell must lie in [0.1, 60], got " + std::to_string(ell));
  }
  HexagonGeometry hex;
  hex.ell = ell;
  hex.s = ell / 2;
  const quad qs = quad(hex.s);
  const quad qt = solve_short_side(qs);
  hex.t = static_cast<double>(qt);

  const double expected = cosh_short_side(ell);
  if (std::abs(std::cosh(hex.t) - expected) > 1e-9 * std::max(1.0, expected)) {
    throw ConsistencyError("build_hexagon: closed chain disagrees with cosh t identity");
  }

  // The third of the chain rotates about the center by 2 pi / 3 and moves the
  // starting vertex to vertex 2, so the center sits at distance rho with
  // sinh(d(v0, v2) / 2) = sinh(rho) sin(pi / 3).
  const QuadFrame third = third_of_chain(qs, qt);
  const quad half_chord = sqrtq(fmaxq(0, (third.m[0] - 1) / 2));
  const quad sinh_rho = half_chord / sinq(kQuadPi / 3);
  const quad rho = asinhq(sinh_rho);
  // Half the angle the long side subtends at the center.
  const quad half_angle = asinq(fminq(1, sinhq(qs / 2) / sinh_rho));
  hex.rho = static_cast<double>(rho);

  std::array<QuadPoint, 6> exact_vertices;
  for (int k = 0; k < 3; ++k) {
    exact_vertices[2 * k] = quad_polar(rho, 2 * kQuadPi * k / 3 - half_angle);
    exact_vertices[2 * k + 1] = quad_polar(rho, 2 * kQuadPi * k / 3 + half_angle);
  }
  for (int i = 0; i < 6; ++i) {
    const QuadPoint& v = exact_vertices[i];
    hex.vertices[i] = Point::from_ambient(
        Vec3{static_cast<double>(v[0]), static_cast<double>(v[1]), static_cast<double>(v[2])});
  }
  for (int i = 0; i < 6; ++i) {
    // Carrier normals come from the quad vertices; the double vertices of a
    // long hexagon are too far out to resolve them.
    const QuadPoint& a = exact_vertices[i];
    const QuadPoint& b = exact_vertices[(i + 1) % 6];
    QuadPoint n{a[1] * b[2] - a[2] * b[1], -(a[2] * b[0] - a[0] * b[2]), -(a[0] * b[1] - a[1] * b[0])};
    const quad norm = sqrtq(n[1] * n[1] + n[2] * n[2] - n[0] * n[0]);
    hex.sides[i] = GeodesicSegment{
        hex.vertices[i], hex.vertices[(i + 1) % 6],
        Vec3{static_cast<double>(n[0] / norm), static_cast<double>(n[1] / norm), static_cast<double>(n[2] / norm)}};
  }
  for (int k = 0; k < 3; ++k) {
    hex.reflections[k] = reflection_in_geodesic(hex.long_side(k).normal);
  }

  // Walk the chain from vertex 0 in the centered frame and make sure it lands
  // on every realized vertex, returning to the start. At vertex 0 the center
  // is seen at the base angle of the isosceles triangle (center, v0, v1),
  // taken from the right triangle (center, foot on side 0, v0) with
  // cosh(rho) = cosh(c) cosh(s / 2); acos would lose half the digits here.
  const quad cosh_c = coshq(rho) / coshq(qs / 2);
  const quad sinh_c = sqrtq(fmaxq(0, (cosh_c - 1) * (cosh_c + 1)));
  const quad base_angle = atan2q(sinh_c / cosh_c, sinhq(qs / 2));
  QuadFrame frame = quad_rotation(-half_angle) * quad_translation(rho) * quad_rotation(kQuadPi - base_angle);
  const QuadFrame turn = quad_rotation(kQuadPi / 2);
  quad residual = 0;
  for (int i = 0; i < 6; ++i) {
    const quad len = i % 2 == 0 ? qs : qt;
    const int pieces = 1 + static_cast<int>(len);
    const QuadFrame step = quad_translation(len / pieces);
    for (int k = 0; k < pieces; ++k) {
      frame = frame * step;
    }
    frame = frame * turn;
    residual = fmaxq(residual, quad_distance(frame.origin_image(), exact_vertices[(i + 1) % 6]));
  }
  hex.closing_residual = static_cast<double>(residual);
  if (!(hex.closing_residual <= kClosingTol)) {
    throw ConsistencyError("build_hexagon: chain fails to close, residual " +
                           std::to_string(hex.closing_residual));
  }

  hex.c_ell = distance_point_to_segment(hex.center, hex.long_side(0));
  hex.c_prime = distance_point_to_segment(hex.center, hex.short_side(0));
  return hex;
}

double seam_length(const HexagonGeometry& hex) { return 2.0 * hex.t; }

double circumradius(const HexagonGeometry& hex) {
  double r = 0.0;
  for (const Point& v : hex.vertices) {
    r = std::max(r, distance(hex.center, v));
  }
  return r;
}

double pants_radius(const HexagonGeometry& hex) {
  // The mirror hexagon is reached across one of the seams, and the hexagon
  // together with its reflection in a seam is convex, so a mirror point q is
  // within min_k d(c_k, q) of the center, c_k the center reflected in seam k.
  // That minimum is convex on each Voronoi cell of the c_k, so its maximum over
  // the hexagon sits at a cell vertex: a hexagon vertex, a bisector crossing a
  // side, or the point equidistant from all three (the center, by symmetry).
  std::array<Point, 3> mirrored;
  for (int k = 0; k < 3; ++k) {
    mirrored[k] = reflection_in_geodesic(hex.short_side(k).normal).apply(hex.center);
  }
  const auto via_seam = [&](const Point& q) {
    double d = distance(mirrored[0], q);
    for (int k = 1; k < 3; ++k) {
      d = std::min(d, distance(mirrored[k], q));
    }
    return d;
  };
  double far = via_seam(hex.center);
  for (const GeodesicSegment& side : hex.sides) {
    far = std::max(far, via_seam(side.a));
    const Vec3 a = side.a.coords();
    const Vec3 b = side.b.coords();
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        // <p, c_i - c_j> = 0 on the bisector, and is affine in lambda along
        // p = (1 - lambda) a + lambda b.
        const Vec3 diff{mirrored[i].x0() - mirrored[j].x0(), mirrored[i].x1() - mirrored[j].x1(),
                        mirrored[i].x2() - mirrored[j].x2()};
        const double fa = lorentz(a, diff);
        const double fb = lorentz(b, diff);
        if (fa == fb || (fa > 0) == (fb > 0)) {
          continue;
        }
        const double lambda = fa / (fa - fb);
        far = std::max(far, via_seam(Point::from_ambient(Vec3{(1 - lambda) * a.x0 + lambda * b.x0,
                                                              (1 - lambda) * a.x1 + lambda * b.x1,
                                                              (1 - lambda) * a.x2 + lambda * b.x2})));
      }
    }
  }
  return std::max(hex.rho, far);
}

HexagonResiduals hexagon_residuals(const HexagonGeometry& hex) {
  HexagonResiduals r;
  for (int i = 0; i < 6; ++i) {
    const double c = lorentz(hex.sides[i].normal, hex.sides[(i + 1) % 6].normal);
    r.max_angle_defect = std::max(r.max_angle_defect, std::abs(c));
  }
  double tmin = 1e300;
  double tmax = -1e300;
  double lmin = 1e300;
  double lmax = -1e300;
  double smin = 1e300;
  double smax = -1e300;
  for (int k = 0; k < 3; ++k) {
    r.long_side_error = std::max(r.long_side_error, std::abs(side_length(hex.long_side(k)) - hex.s));
    const double ts = side_length(hex.short_side(k));
    tmin = std::min(tmin, ts);
    tmax = std::max(tmax, ts);
    const double dl = distance_point_to_segment(hex.center, hex.long_side(k));
    lmin = std::min(lmin, dl);
    lmax = std::max(lmax, dl);
    const double ds = distance_point_to_segment(hex.center, hex.short_side(k));
    smin = std::min(smin, ds);
    smax = std::max(smax, ds);
  }
  r.short_side_spread = tmax - tmin;
  r.long_distance_spread = std::max(std::abs(lmax - hex.c_ell), std::abs(lmin - hex.c_ell));
  r.short_distance_spread = std::max(std::abs(smax - hex.c_prime), std::abs(smin - hex.c_prime));
  const double ch = std::cosh(hex.ell / 2);
  r.cosh_identity_error = std::abs(std::cosh(hex.t) * (ch - 1.0) - ch) / ch;
  r.inscribed_margin = std::min(hex.c_ell, hex.c_prime) - 0.5 * std::log(3.0);
  return r;
}

}  // namespace hypdiam
