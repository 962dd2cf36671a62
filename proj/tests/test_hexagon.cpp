#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hypdiam/errors.hpp"
#include "hypdiam/hexagon.hpp"
#include "hypdiam/random.hpp"

using namespace hypdiam;

namespace {

// Center-to-side distance of a 3-fold symmetric right-angled hexagon whose
// alternating sides have length a: sinh d = 1 / (sqrt 3 tanh(a / 2)).
double symmetric_apothem(double a) {
  return std::asinh(1.0 / (std::sqrt(3.0) * std::tanh(a / 2)));
}

const double kGrid[] = {1, 2, 4, 6, 8, 12, 16, 24, 40};

}  // namespace

TEST(Hexagon, CoshIdentityOnGrid) {
  for (double ell : kGrid) {
    const HexagonGeometry h = build_hexagon(ell);
    const double lhs = std::cosh(h.t) * (std::cosh(ell / 2) - 1);
    EXPECT_NEAR(lhs / std::cosh(ell / 2), 1.0, 1e-8) << "ell=" << ell;
    EXPECT_NEAR(std::cosh(h.t), cosh_short_side(ell), 1e-9 * cosh_short_side(ell));
  }
}

TEST(Hexagon, RegularCase) {
  const double ell = 2 * std::acosh(2.0);
  const HexagonGeometry h = build_hexagon(ell);
  EXPECT_NEAR(h.t, std::acosh(2.0), 1e-9);
  EXPECT_NEAR(h.c_ell, std::acosh(std::sqrt(2.0)), 1e-9);
  EXPECT_NEAR(h.c_prime, h.c_ell, 1e-9);
}

TEST(Hexagon, ApothemsMatchClosedForm) {
  for (double ell : kGrid) {
    const HexagonGeometry h = build_hexagon(ell);
    EXPECT_NEAR(h.c_ell, symmetric_apothem(ell / 2), 1e-9) << "ell=" << ell;
    EXPECT_NEAR(h.c_prime, symmetric_apothem(h.t), 1e-9) << "ell=" << ell;
  }
  // Frozen from the closed form at ell = 12.
  EXPECT_NEAR(build_hexagon(12.0).c_ell, 0.5517895, 1e-6);
}

TEST(Hexagon, InscribedDisk) {
  for (double ell : kGrid) {
    const HexagonGeometry h = build_hexagon(ell);
    EXPECT_GT(std::min(h.c_ell, h.c_prime), std::log(3.0) / 2) << "ell=" << ell;
    EXPECT_GT(hexagon_residuals(h).inscribed_margin, 0.0);
  }
}

TEST(Hexagon, ResidualsSmall) {
  for (double ell : kGrid) {
    const HexagonResiduals r = hexagon_residuals(build_hexagon(ell));
    EXPECT_LT(r.max_angle_defect, 1e-8) << "ell=" << ell;
    EXPECT_LT(r.long_side_error, 1e-8);
    EXPECT_LT(r.short_side_spread, 1e-8);
    EXPECT_LT(r.long_distance_spread, 1e-8);
    EXPECT_LT(r.short_distance_spread, 1e-8);
    EXPECT_LT(r.cosh_identity_error, 1e-8);
  }
}

TEST(Hexagon, SeamAsymptotics) {
  const auto ratio = [](double ell) { return seam_length(build_hexagon(ell)) / (4 * std::exp(-ell / 4)); };
  EXPECT_LE(std::abs(ratio(12.0) - 1), 0.05);
  EXPECT_LE(std::abs(ratio(20.0) - 1), 0.01);
  EXPECT_DOUBLE_EQ(seam_length(build_hexagon(6.0)), 2 * build_hexagon(6.0).t);
}

TEST(Hexagon, ReflectionsFixTheirSides) {
  const HexagonGeometry h = build_hexagon(5.0);
  for (int k = 0; k < 3; ++k) {
    const Isometry& r = h.reflections[k];
    EXPECT_LT((r * r).max_abs_diff(Isometry()), 1e-9);
    EXPECT_LT(distance(r.apply(h.long_side(k).a), h.long_side(k).a), 1e-8);
    EXPECT_LT(distance(r.apply(h.long_side(k).b), h.long_side(k).b), 1e-8);
    EXPECT_NEAR(distance(h.center, r.apply(h.center)), 2 * h.c_ell, 1e-9);
  }
}

TEST(Hexagon, CircumradiusAtVertex) {
  const HexagonGeometry h = build_hexagon(3.0);
  double far = 0;
  for (const Point& v : h.vertices) {
    far = std::max(far, distance(h.center, v));
  }
  EXPECT_NEAR(circumradius(h), far, 1e-12);
  EXPECT_NEAR(h.rho, far, 1e-12);
}

// Sampled points of the pants never beat the bound, and the bound is tight.
TEST(Hexagon, PantsRadiusBoundsSamples) {
  for (double ell : {1.0, 5.7, 12.0}) {
    const HexagonGeometry h = build_hexagon(ell);
    std::array<Point, 3> centers;  // the center reflected across each short side
    for (int k = 0; k < 3; ++k) {
      centers[k] = reflection_in_geodesic(h.short_side(k).normal).apply(h.center);
    }
    Rng rng(5);
    double sampled = 0;
    for (int i = 0; i < 40000; ++i) {
      // Random point of the hexagon by rejection from a disk of radius rho.
      const double r = std::acosh(1 + (std::cosh(h.rho) - 1) * rng.unit());
      const Point p = Point::polar(r, 2 * std::numbers::pi * rng.unit());
      bool inside = true;
      for (const auto& s : h.sides) {
        if (lorentz(p.coords(), s.normal) * lorentz(h.center.coords(), s.normal) < 0) {
          inside = false;
        }
      }
      if (!inside) {
        continue;
      }
      // p itself, and its mirror image in the other hexagon, seen from the
      // midpoint through the nearest seam.
      double mirror = distance(centers[0], p);
      for (const Point& c : centers) {
        mirror = std::min(mirror, distance(c, p));
      }
      sampled = std::max({sampled, distance(h.center, p), mirror});
    }
    const double bound = pants_radius(h);
    EXPECT_LE(sampled, bound + 1e-9) << "ell=" << ell;
    EXPECT_GE(sampled, bound - 0.05) << "ell=" << ell;
    EXPECT_GE(bound, h.rho - 1e-12);
  }
}

TEST(Hexagon, RejectsOutOfRange) {
  EXPECT_THROW(build_hexagon(0.05), InputError);
  EXPECT_THROW(build_hexagon(61.0), InputError);
  EXPECT_THROW(build_hexagon(std::nan("")), InputError);
}
